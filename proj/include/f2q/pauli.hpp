// Copyright 2026 The f2q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Pauli strings with exact phase tracking, and sums of Pauli strings.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace f2q {

using cplx = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Phase i^k of a product of single-qubit Paulis a*b, together with the letter.
[[nodiscard]] constexpr std::pair<int, Pauli> multiply_letters(Pauli a,
                                                               Pauli b) {
    if (a == Pauli::I) {
        return {0, b};
    }
    if (b == Pauli::I) {
        return {0, a};
    }
    if (a == b) {
        return {0, Pauli::I};
    }
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    const auto c = static_cast<Pauli>(6 - ia - ib);
    // X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order gives -i.
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    return {cyclic ? 1 : 3, c};
}

/**
 * @brief Pauli string phase * P_0 (x) P_1 (x) ... over a fixed register.
 *
 * The phase is stored as an exponent k with phase = i^k.
 */
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::size_t n_qubits)
        : letters_(n_qubits, Pauli::I) {}

    [[nodiscard]] std::size_t size() const { return letters_.size(); }
    [[nodiscard]] int phase_exponent() const { return phase_; }
    [[nodiscard]] cplx phase() const {
        static constexpr std::array<cplx, 4> table{
            cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
        return table[static_cast<std::size_t>(phase_)];
    }
    void set_phase_exponent(int k) { phase_ = ((k % 4) + 4) % 4; }

    [[nodiscard]] Pauli operator[](std::size_t q) const { return letters_[q]; }
    [[nodiscard]] const std::vector<Pauli> &letters() const { return letters_; }

    /// Multiplies the letter at q from the right by p (phase tracked).
    PauliString &mul_at(std::size_t q, Pauli p) {
        if (q >= letters_.size()) {
            throw std::out_of_range("Pauli position outside register");
        }
        auto [k, r] = multiply_letters(letters_[q], p);
        letters_[q] = r;
        set_phase_exponent(phase_ + k);
        return *this;
    }

    [[nodiscard]] bool is_hermitian() const { return phase_ % 2 == 0; }
    [[nodiscard]] bool is_identity() const {
        return std::all_of(letters_.begin(), letters_.end(),
                           [](Pauli p) { return p == Pauli::I; });
    }

    [[nodiscard]] std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            if (letters_[q] != Pauli::I) {
                out.push_back(q);
            }
        }
        return out;
    }

    /// Bit masks used by the simulator kernels (register <= 64 qubits).
    [[nodiscard]] std::uint64_t x_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) {
                m |= std::uint64_t{1} << q;
            }
        }
        return m;
    }
    [[nodiscard]] std::uint64_t z_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); ++q) {
            if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) {
                m |= std::uint64_t{1} << q;
            }
        }
        return m;
    }
    [[nodiscard]] int y_count() const {
        return static_cast<int>(
            std::count(letters_.begin(), letters_.end(), Pauli::Y));
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

    /// Ordering on letters only (phase ignored); used for term merging.
    [[nodiscard]] bool letters_less(const PauliString &o) const {
        return letters_ < o.letters_;
    }

  private:
    std::vector<Pauli> letters_;
    int phase_ = 0;
};

/// Builds a string from (qubit, letter) pairs.
[[nodiscard]] inline PauliString
make_pauli(std::size_t n_qubits,
           std::initializer_list<std::pair<int, Pauli>> items, int phase = 0) {
    PauliString s(n_qubits);
    for (auto [q, p] : items) {
        s.mul_at(static_cast<std::size_t>(q), p);
    }
    s.set_phase_exponent(s.phase_exponent() + phase);
    return s;
}

[[nodiscard]] inline PauliString multiply(const PauliString &a,
                                          const PauliString &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("Pauli string register size mismatch");
    }
    PauliString out = a;
    for (std::size_t q = 0; q < b.size(); ++q) {
        out.mul_at(q, b[q]);
    }
    out.set_phase_exponent(out.phase_exponent() + b.phase_exponent());
    return out;
}

[[nodiscard]] inline bool commutes(const PauliString &a, const PauliString &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("Pauli string register size mismatch");
    }
    int anti = 0;
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q]) {
            ++anti;
        }
    }
    return anti % 2 == 0;
}

[[nodiscard]] inline char letter_char(Pauli p) {
    static constexpr char chars[] = {'I', 'X', 'Y', 'Z'};
    return chars[static_cast<int>(p)];
}

/// Renders e.g. "+1 Z0 Z2 Y4 X5 X6 Y7"; the identity renders as "+1 I".
[[nodiscard]] inline std::string to_string(const PauliString &s) {
    static const char *phases[] = {"+1", "+i", "-1", "-i"};
    std::ostringstream os;
    os << phases[s.phase_exponent()];
    bool any = false;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] != Pauli::I) {
            os << ' ' << letter_char(s[q]) << q;
            any = true;
        }
    }
    if (!any) {
        os << " I";
    }
    return os.str();
}

/// Inverse of to_string; tokens may appear in any order.
[[nodiscard]] inline PauliString parse_pauli(const std::string &text,
                                             std::size_t n_qubits) {
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok)) {
        throw std::invalid_argument("empty Pauli string");
    }
    int phase = 0;
    if (tok == "+1" || tok == "1") {
        phase = 0;
    } else if (tok == "+i" || tok == "i") {
        phase = 1;
    } else if (tok == "-1") {
        phase = 2;
    } else if (tok == "-i") {
        phase = 3;
    } else {
        throw std::invalid_argument("bad Pauli phase token: " + tok);
    }
    PauliString s(n_qubits);
    while (is >> tok) {
        if (tok == "I") {
            continue;
        }
        Pauli p;
        switch (tok[0]) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default: throw std::invalid_argument("bad Pauli token: " + tok);
        }
        const std::size_t q = std::stoul(tok.substr(1));
        if (q >= n_qubits) {
            throw std::out_of_range("Pauli qubit index outside register");
        }
        if (s[q] != Pauli::I) {
            throw std::invalid_argument("repeated qubit in Pauli string");
        }
        s.mul_at(q, p);
    }
    s.set_phase_exponent(phase);
    return s;
}

struct PauliTerm {
    cplx coefficient;
    PauliString string;
};

/**
 * @brief Linear combination of Pauli strings on a common register.
 *
 * Strings are stored with phase +1; any string phase is folded into the
 * coefficient. simplify() merges equal letter patterns and prunes |c| < 1e-12.
 */
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    [[nodiscard]] std::size_t num_qubits() const { return n_qubits_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    PauliSum &add(cplx c, PauliString s) {
        if (n_qubits_ == 0) {
            n_qubits_ = s.size();
        }
        if (s.size() != n_qubits_) {
            throw std::invalid_argument("Pauli term register size mismatch");
        }
        c *= s.phase();
        s.set_phase_exponent(0);
        terms_.push_back({c, std::move(s)});
        return *this;
    }

    PauliSum &add(const PauliSum &o, cplx scale = 1.0) {
        for (const auto &t : o.terms_) {
            add(scale * t.coefficient, t.string);
        }
        return *this;
    }

    PauliSum &simplify(double prune = 1e-12) {
        std::sort(terms_.begin(), terms_.end(),
                  [](const PauliTerm &a, const PauliTerm &b) {
                      return a.string.letters_less(b.string);
                  });
        std::vector<PauliTerm> merged;
        for (auto &t : terms_) {
            if (!merged.empty() &&
                merged.back().string.letters() == t.string.letters()) {
                merged.back().coefficient += t.coefficient;
            } else {
                merged.push_back(std::move(t));
            }
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [prune](const PauliTerm &t) {
                                        return std::abs(t.coefficient) < prune;
                                    }),
                     merged.end());
        terms_ = std::move(merged);
        return *this;
    }

    /// Hermitian iff every (phase-folded) coefficient is real.
    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [tol](const PauliTerm &t) {
                               return std::abs(t.coefficient.imag()) <= tol;
                           });
    }

    [[nodiscard]] double identity_coefficient() const {
        double c = 0.0;
        for (const auto &t : terms_) {
            if (t.string.is_identity()) {
                c += t.coefficient.real();
            }
        }
        return c;
    }

  private:
    std::size_t n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

[[nodiscard]] inline bool commutes(const PauliSum &a, const PauliString &b) {
    return std::all_of(a.terms().begin(), a.terms().end(),
                       [&b](const PauliTerm &t) { return commutes(t.string, b); });
}

/// Exact operator product of two sums, simplified.
[[nodiscard]] inline PauliSum multiply(const PauliSum &a, const PauliSum &b) {
    PauliSum out(a.num_qubits());
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            out.add(ta.coefficient * tb.coefficient,
                    multiply(ta.string, tb.string));
        }
    }
    out.simplify();
    return out;
}

/// a*b - b*a, simplified.
[[nodiscard]] inline PauliSum commutator(const PauliSum &a, const PauliSum &b) {
    PauliSum out = multiply(a, b);
    out.add(multiply(b, a), -1.0);
    out.simplify();
    return out;
}

} // namespace f2q
