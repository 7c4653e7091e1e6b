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
 * Dense and sparse statevectors with gate, Pauli and expectation kernels.
 *
 * Qubit q is bit q of the amplitude index. For a k-qubit matrix acting on
 * targets (t_0, ..., t_{k-1}), t_0 is the most significant bit of the local
 * matrix index, so CNOT on {control, target} uses the textbook 4x4 matrix.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pauli.hpp"

namespace f2q {

using Index = std::uint64_t;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxDenseQubits = 24;
inline constexpr int kMaxSparseQubits = 62;

/// A gate matrix stored row-wise with its nonzeros only.
struct CompiledGate {
    std::vector<int> targets;
    int dim = 0;
    std::vector<int> row_ptr;
    std::vector<int> cols;
    std::vector<cplx> vals;
    bool diagonal = false;
    bool monomial = false; ///< exactly one nonzero per column
    std::vector<std::pair<int, cplx>> column_entry; ///< (row, value) per column if monomial

    CompiledGate(const Matrix &m, std::vector<int> tgts, double drop = 0.0)
        : targets(std::move(tgts)), dim(static_cast<int>(m.rows())) {
        if (targets.empty() || targets.size() > 4) {
            throw std::invalid_argument("compiled gates act on 1 to 4 qubits");
        }
        if (m.rows() != m.cols() ||
            m.rows() != (Eigen::Index{1} << targets.size())) {
            throw std::invalid_argument("gate matrix does not match targets");
        }
        row_ptr.push_back(0);
        diagonal = true;
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                if (std::abs(m(r, c)) > drop) {
                    cols.push_back(c);
                    vals.push_back(m(r, c));
                    if (r != c) {
                        diagonal = false;
                    }
                }
            }
            row_ptr.push_back(static_cast<int>(cols.size()));
        }
        std::vector<int> per_col(static_cast<std::size_t>(dim), 0);
        column_entry.assign(static_cast<std::size_t>(dim), {0, cplx{0, 0}});
        for (int r = 0; r < dim; ++r) {
            for (int p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
                const auto c = static_cast<std::size_t>(cols[static_cast<std::size_t>(p)]);
                ++per_col[c];
                column_entry[c] = {r, vals[static_cast<std::size_t>(p)]};
            }
        }
        monomial = std::all_of(per_col.begin(), per_col.end(), [](int k) { return k == 1; });
    }

    /// Offsets of the 2^k local basis states relative to a block base.
    [[nodiscard]] std::vector<Index> offsets() const {
        const int k = static_cast<int>(targets.size());
        std::vector<Index> off(static_cast<std::size_t>(dim), 0);
        for (int j = 0; j < dim; ++j) {
            for (int m = 0; m < k; ++m) {
                if ((j >> (k - 1 - m)) & 1) {
                    off[static_cast<std::size_t>(j)] |= Index{1} << targets[static_cast<std::size_t>(m)];
                }
            }
        }
        return off;
    }

    [[nodiscard]] Index mask() const {
        Index m = 0;
        for (int t : targets) {
            m |= Index{1} << t;
        }
        return m;
    }
};

inline void check_targets(const std::vector<int> &targets, int n_qubits) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_qubits) {
            throw std::out_of_range("gate target outside register");
        }
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("duplicate gate targets");
            }
        }
    }
}

[[nodiscard]] inline bool is_unitary(const Matrix &u, double tol = 1e-10) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return ((u.adjoint() * u) - Matrix::Identity(u.rows(), u.cols()))
               .cwiseAbs()
               .maxCoeff() <= tol;
}

/// Inserts zero bits at the (ascending) positions.
[[nodiscard]] inline Index deposit_zeros(Index i,
                                         const std::vector<int> &sorted_pos) {
    for (int p : sorted_pos) {
        const Index low = i & ((Index{1} << p) - 1);
        i = low | ((i >> p) << (p + 1));
    }
    return i;
}

/// i^k * (-1)^popcount(idx & z) for a Pauli string with y_count k.
[[nodiscard]] inline cplx pauli_phase(int phase_exp, Index idx, Index zmask) {
    const int sign = std::popcount(idx & zmask) & 1;
    const int k = (phase_exp + 2 * sign) & 3;
    switch (k) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
    }
}

/**
 * @brief Dense amplitude vector of length 2^n.
 *
 * Public gate operations preserve the norm; renormalization happens only
 * through normalize(). Work vectors such as H|psi> reuse this type.
 */
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 0 || n_qubits > kMaxDenseQubits) {
            throw std::length_error("dense register limited to " +
                                    std::to_string(kMaxDenseQubits) + " qubits");
        }
        amps_.assign(std::size_t{1} << n_qubits, cplx{0, 0});
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] cplx amplitude(Index i) const { return amps_[i]; }
    [[nodiscard]] std::vector<cplx> &data() { return amps_; }
    [[nodiscard]] const std::vector<cplx> &data() const { return amps_; }
    cplx &operator[](Index i) { return amps_[i]; }
    const cplx &operator[](Index i) const { return amps_[i]; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const cplx &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void normalize() {
        const double nrm = norm();
        if (nrm == 0.0) {
            throw std::domain_error("cannot normalize the zero vector");
        }
        for (cplx &a : amps_) {
            a /= nrm;
        }
    }

    void apply(const CompiledGate &g) {
        std::vector<int> sorted = g.targets;
        std::sort(sorted.begin(), sorted.end());
        const auto off = g.offsets();
        const auto k = static_cast<int>(g.targets.size());
        const Index blocks = Index{1} << (n_ - k);
        if (g.diagonal) {
            std::vector<cplx> d(static_cast<std::size_t>(g.dim), cplx{0, 0});
            for (int r = 0; r < g.dim; ++r) {
                for (int p = g.row_ptr[r]; p < g.row_ptr[r + 1]; ++p) {
                    d[static_cast<std::size_t>(r)] = g.vals[static_cast<std::size_t>(p)];
                }
            }
#pragma omp parallel for if (blocks > (Index{1} << 14))
            for (Index b = 0; b < blocks; ++b) {
                const Index base = deposit_zeros(b, sorted);
                for (int j = 0; j < g.dim; ++j) {
                    amps_[base | off[static_cast<std::size_t>(j)]] *= d[static_cast<std::size_t>(j)];
                }
            }
            return;
        }
#pragma omp parallel for if (blocks > (Index{1} << 14))
        for (Index b = 0; b < blocks; ++b) {
            const Index base = deposit_zeros(b, sorted);
            cplx in[16];
            bool any = false;
            for (int j = 0; j < g.dim; ++j) {
                in[j] = amps_[base | off[static_cast<std::size_t>(j)]];
                any = any || in[j] != cplx{0, 0};
            }
            if (!any) {
                continue;
            }
            for (int r = 0; r < g.dim; ++r) {
                double ar = 0.0;
                double ai = 0.0;
                for (int p = g.row_ptr[r]; p < g.row_ptr[r + 1]; ++p) {
                    const cplx m = g.vals[static_cast<std::size_t>(p)];
                    const cplx x = in[g.cols[static_cast<std::size_t>(p)]];
                    ar += m.real() * x.real() - m.imag() * x.imag();
                    ai += m.real() * x.imag() + m.imag() * x.real();
                }
                amps_[base | off[static_cast<std::size_t>(r)]] = {ar, ai};
            }
        }
    }

    /// <other| M |this> summed over all blocks, without modifying the state.
    [[nodiscard]] cplx local_matrix_element(const StateVector &bra,
                                            const CompiledGate &g) const {
        std::vector<int> sorted = g.targets;
        std::sort(sorted.begin(), sorted.end());
        const auto off = g.offsets();
        const auto k = static_cast<int>(g.targets.size());
        const Index blocks = Index{1} << (n_ - k);
        double re = 0.0;
        double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) if (blocks > (Index{1} << 14))
        for (Index b = 0; b < blocks; ++b) {
            const Index base = deposit_zeros(b, sorted);
            cplx in[16];
            for (int j = 0; j < g.dim; ++j) {
                in[j] = amps_[base | off[static_cast<std::size_t>(j)]];
            }
            for (int r = 0; r < g.dim; ++r) {
                if (g.row_ptr[r] == g.row_ptr[r + 1]) {
                    continue;
                }
                double xr = 0.0;
                double xi = 0.0;
                for (int p = g.row_ptr[r]; p < g.row_ptr[r + 1]; ++p) {
                    const cplx m = g.vals[static_cast<std::size_t>(p)];
                    const cplx x = in[g.cols[static_cast<std::size_t>(p)]];
                    xr += m.real() * x.real() - m.imag() * x.imag();
                    xi += m.real() * x.imag() + m.imag() * x.real();
                }
                const cplx b = bra.amps_[base | off[static_cast<std::size_t>(r)]];
                re += b.real() * xr + b.imag() * xi;
                im += b.real() * xi - b.imag() * xr;
            }
        }
        return {re, im};
    }

    /**
     * Reduced outer product M(r, c) = sum over blocks of conj(bra_r) this_c on
     * `targets`, so that <bra| D |this> = sum_rc D(r, c) M(r, c) for any D.
     */
    [[nodiscard]] Matrix local_density(const StateVector &bra,
                                       const std::vector<int> &targets) const {
        check_targets(targets, n_);
        if (targets.size() > 4) {
            throw std::invalid_argument("local density limited to 4 qubits");
        }
        std::vector<int> sorted = targets;
        std::sort(sorted.begin(), sorted.end());
        const auto k = static_cast<int>(targets.size());
        const int dim = 1 << k;
        std::vector<Index> off(static_cast<std::size_t>(dim), 0);
        for (int j = 0; j < dim; ++j) {
            for (int m = 0; m < k; ++m) {
                if ((j >> (k - 1 - m)) & 1) {
                    off[static_cast<std::size_t>(j)] |= Index{1} << targets[static_cast<std::size_t>(m)];
                }
            }
        }
        // Real arithmetic keeps the inner loop free of complex-NaN handling.
        double re[256] = {};
        double im[256] = {};
        const Index blocks = Index{1} << (n_ - k);
        for (Index b = 0; b < blocks; ++b) {
            const Index base = deposit_zeros(b, sorted);
            double kr[16], ki[16], br[16], bi[16];
            for (int j = 0; j < dim; ++j) {
                const Index i = base | off[static_cast<std::size_t>(j)];
                kr[j] = amps_[i].real();
                ki[j] = amps_[i].imag();
                br[j] = bra.amps_[i].real();
                bi[j] = -bra.amps_[i].imag();
            }
            for (int r = 0; r < dim; ++r) {
                for (int c = 0; c < dim; ++c) {
                    re[r * dim + c] += br[r] * kr[c] - bi[r] * ki[c];
                    im[r * dim + c] += br[r] * ki[c] + bi[r] * kr[c];
                }
            }
        }
        Matrix acc(dim, dim);
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) {
                acc(r, c) = {re[r * dim + c], im[r * dim + c]};
            }
        }
        return acc;
    }

  private:
    int n_ = 0;
    std::vector<cplx> amps_;
};

/**
 * @brief Sparse statevector keyed by basis index.
 *
 * Used for registers too large for a dense vector whose states nevertheless
 * have small support, e.g. constraint checks on a 4x4 torus (32 qubits).
 */
class SparseState {
  public:
    using Map = std::unordered_map<Index, cplx>;

    SparseState() = default;
    explicit SparseState(int n_qubits) : n_(n_qubits) {
        if (n_qubits < 0 || n_qubits > kMaxSparseQubits) {
            throw std::length_error("sparse register limited to " +
                                    std::to_string(kMaxSparseQubits) + " qubits");
        }
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t support_size() const { return amps_.size(); }
    [[nodiscard]] const Map &data() const { return amps_; }
    [[nodiscard]] Map &data() { return amps_; }

    [[nodiscard]] cplx amplitude(Index i) const {
        auto it = amps_.find(i);
        return it == amps_.end() ? cplx{0, 0} : it->second;
    }
    void set(Index i, cplx a) {
        if (a == cplx{0, 0}) {
            amps_.erase(i);
        } else {
            amps_[i] = a;
        }
    }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &[i, a] : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    void normalize() {
        const double nrm = norm();
        if (nrm == 0.0) {
            throw std::domain_error("cannot normalize the zero vector");
        }
        for (auto &[i, a] : amps_) {
            a /= nrm;
        }
    }

    void apply(const CompiledGate &g, double drop = 1e-15) {
        const auto off = g.offsets();
        if (g.diagonal) {
            std::vector<cplx> d(static_cast<std::size_t>(g.dim), cplx{0, 0});
            for (int r = 0; r < g.dim; ++r) {
                for (int p = g.row_ptr[r]; p < g.row_ptr[r + 1]; ++p) {
                    d[static_cast<std::size_t>(r)] = g.vals[static_cast<std::size_t>(p)];
                }
            }
            for (auto &[i, a] : amps_) {
                int j = 0;
                for (int t : g.targets) {
                    j = (j << 1) | static_cast<int>((i >> t) & 1);
                }
                a *= d[static_cast<std::size_t>(j)];
            }
            return;
        }
        if (g.monomial) {
            // One nonzero per column: every amplitude moves to a single target.
            Map out;
            out.reserve(amps_.size());
            for (const auto &[i, a] : amps_) {
                int j = 0;
                for (int t : g.targets) {
                    j = (j << 1) | static_cast<int>((i >> t) & 1);
                }
                const auto &[r, val] = g.column_entry[static_cast<std::size_t>(j)];
                const Index base = i & ~g.mask();
                out.emplace(base | off[static_cast<std::size_t>(r)], val * a);
            }
            amps_ = std::move(out);
            return;
        }
        const Index mask = g.mask();
        std::vector<Index> bases;
        bases.reserve(amps_.size());
        for (const auto &[i, a] : amps_) {
            bases.push_back(i & ~mask);
        }
        std::sort(bases.begin(), bases.end());
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
        Map out;
        out.reserve(amps_.size() * 2);
        for (Index base : bases) {
            cplx in[16];
            for (int j = 0; j < g.dim; ++j) {
                in[j] = amplitude(base | off[static_cast<std::size_t>(j)]);
            }
            for (int r = 0; r < g.dim; ++r) {
                cplx acc{0, 0};
                for (int p = g.row_ptr[r]; p < g.row_ptr[r + 1]; ++p) {
                    acc += g.vals[static_cast<std::size_t>(p)] * in[g.cols[static_cast<std::size_t>(p)]];
                }
                if (std::abs(acc) > drop) {
                    out.emplace(base | off[static_cast<std::size_t>(r)], acc);
                }
            }
        }
        amps_ = std::move(out);
    }

  private:
    int n_ = 0;
    Map amps_;
};

template <class S>
concept QuantumState = requires(S s, const S cs, const CompiledGate &g) {
    { cs.num_qubits() } -> std::convertible_to<int>;
    { cs.norm() } -> std::convertible_to<double>;
    s.apply(g);
};

/// |0...0> on a dense register (<= 24 qubits).
[[nodiscard]] inline StateVector zero_state(int n_qubits) {
    StateVector s(n_qubits);
    s[0] = 1.0;
    return s;
}

[[nodiscard]] inline SparseState sparse_zero_state(int n_qubits) {
    SparseState s(n_qubits);
    s.set(0, 1.0);
    return s;
}

/**
 * Applies a unitary on 1..4 distinct targets. Throws on a non-unitary matrix
 * (tolerance 1e-10) or duplicate targets.
 */
template <QuantumState S>
void apply_matrix_gate(S &state, const Matrix &u,
                       const std::vector<int> &targets) {
    if (targets.empty() || targets.size() > 4) {
        throw std::invalid_argument("matrix gates act on 1 to 4 qubits");
    }
    check_targets(targets, state.num_qubits());
    if (!is_unitary(u)) {
        throw std::invalid_argument("gate matrix is not unitary");
    }
    state.apply(CompiledGate(u, targets));
}

/// P|psi> including the string's global phase.
inline void apply_pauli(StateVector &state, const PauliString &p) {
    if (static_cast<int>(p.size()) != state.num_qubits()) {
        throw std::invalid_argument("Pauli string register size mismatch");
    }
    const Index x = p.x_mask();
    const Index z = p.z_mask();
    const int ph = p.phase_exponent() + p.y_count();
    auto &a = state.data();
    std::vector<cplx> out(a.size());
    for (Index i = 0; i < a.size(); ++i) {
        out[i ^ x] = pauli_phase(ph, i, z) * a[i];
    }
    a.swap(out);
}

inline void apply_pauli(SparseState &state, const PauliString &p) {
    if (static_cast<int>(p.size()) != state.num_qubits()) {
        throw std::invalid_argument("Pauli string register size mismatch");
    }
    const Index x = p.x_mask();
    const Index z = p.z_mask();
    const int ph = p.phase_exponent() + p.y_count();
    SparseState::Map out;
    out.reserve(state.support_size());
    for (const auto &[i, a] : state.data()) {
        out.emplace(i ^ x, pauli_phase(ph, i, z) * a);
    }
    state.data() = std::move(out);
}

/// <psi|P|psi> for a single string (complex in general).
[[nodiscard]] inline cplx expectation(const StateVector &s,
                                      const PauliString &p) {
    const Index x = p.x_mask();
    const Index z = p.z_mask();
    const int ph = p.phase_exponent() + p.y_count();
    const auto &a = s.data();
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for reduction(+ : re, im) if (a.size() > (std::size_t{1} << 15))
    for (Index i = 0; i < a.size(); ++i) {
        const cplx v = std::conj(a[i ^ x]) * pauli_phase(ph, i, z) * a[i];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

[[nodiscard]] inline cplx expectation(const SparseState &s,
                                      const PauliString &p) {
    const Index x = p.x_mask();
    const Index z = p.z_mask();
    const int ph = p.phase_exponent() + p.y_count();
    cplx acc{0, 0};
    for (const auto &[i, a] : s.data()) {
        const cplx partner = s.amplitude(i ^ x);
        if (partner != cplx{0, 0}) {
            acc += std::conj(partner) * pauli_phase(ph, i, z) * a;
        }
    }
    return acc;
}

/// Terms of a PauliSum grouped by X mask; used by expval and apply_sum.
struct GroupedSum {
    struct Group {
        Index x = 0;
        std::vector<std::pair<Index, cplx>> z_terms; ///< (z mask, coefficient * i^y)
    };
    std::vector<Group> groups;
    int n_qubits = 0;

    explicit GroupedSum(const PauliSum &sum)
        : n_qubits(static_cast<int>(sum.num_qubits())) {
        std::unordered_map<Index, std::size_t> where;
        for (const auto &t : sum.terms()) {
            const Index x = t.string.x_mask();
            static constexpr cplx ipow[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            const cplx c = t.coefficient *
                           ipow[(t.string.phase_exponent() + t.string.y_count()) & 3];
            auto [it, fresh] = where.emplace(x, groups.size());
            if (fresh) {
                groups.push_back({x, {}});
            }
            groups[it->second].z_terms.emplace_back(t.string.z_mask(), c);
        }
    }

    [[nodiscard]] cplx weight(const Group &g, Index i) const {
        cplx w{0, 0};
        for (const auto &[z, c] : g.z_terms) {
            w += (std::popcount(i & z) & 1) ? -c : c;
        }
        return w;
    }
};

/// out = O|psi> (unnormalized).
[[nodiscard]] inline StateVector apply_sum(const GroupedSum &o,
                                           const StateVector &psi) {
    if (o.n_qubits != psi.num_qubits()) {
        throw std::invalid_argument("operator register size mismatch");
    }
    StateVector out(psi.num_qubits());
    const auto &a = psi.data();
    auto &b = out.data();
    for (const auto &g : o.groups) {
#pragma omp parallel for if (a.size() > (std::size_t{1} << 15))
        for (Index i = 0; i < a.size(); ++i) {
            if (a[i] != cplx{0, 0}) {
                b[i ^ g.x] += o.weight(g, i) * a[i];
            }
        }
    }
    return out;
}

[[nodiscard]] inline StateVector apply_sum(const PauliSum &o,
                                           const StateVector &psi) {
    return apply_sum(GroupedSum(o), psi);
}

[[nodiscard]] inline SparseState apply_sum(const PauliSum &o,
                                           const SparseState &psi) {
    const GroupedSum gs(o);
    SparseState out(psi.num_qubits());
    for (const auto &g : gs.groups) {
        for (const auto &[i, a] : psi.data()) {
            out.data()[i ^ g.x] += gs.weight(g, i) * a;
        }
    }
    return out;
}

[[nodiscard]] inline cplx inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner product dimension mismatch");
    }
    double re = 0.0;
    double im = 0.0;
    const auto &x = a.data();
    const auto &y = b.data();
#pragma omp parallel for reduction(+ : re, im) if (x.size() > (std::size_t{1} << 15))
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cplx v = std::conj(x[i]) * y[i];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

[[nodiscard]] inline cplx inner(const SparseState &a, const SparseState &b) {
    cplx acc{0, 0};
    for (const auto &[i, v] : b.data()) {
        acc += std::conj(a.amplitude(i)) * v;
    }
    return acc;
}

/// Complex expectation value <psi|O|psi> (no Hermiticity check).
[[nodiscard]] inline cplx expectation(const StateVector &psi,
                                      const GroupedSum &o) {
    const auto &a = psi.data();
    double re = 0.0;
    double im = 0.0;
    for (const auto &g : o.groups) {
#pragma omp parallel for reduction(+ : re, im) if (a.size() > (std::size_t{1} << 15))
        for (Index i = 0; i < a.size(); ++i) {
            if (a[i] != cplx{0, 0}) {
                const cplx v = std::conj(a[i ^ g.x]) * o.weight(g, i) * a[i];
                re += v.real();
                im += v.imag();
            }
        }
    }
    return {re, im};
}

template <QuantumState S>
[[nodiscard]] cplx expectation(const S &psi, const PauliSum &o) {
    if (static_cast<int>(o.num_qubits()) != psi.num_qubits()) {
        throw std::invalid_argument("operator register size mismatch");
    }
    if constexpr (std::is_same_v<S, StateVector>) {
        return expectation(psi, GroupedSum(o));
    } else {
        cplx acc{0, 0};
        for (const auto &t : o.terms()) {
            acc += t.coefficient * expectation(psi, t.string);
        }
        return acc;
    }
}

/**
 * Real expectation of a Hermitian PauliSum. Throws on non-Hermitian input or
 * when the imaginary residue exceeds 1e-10 (relative to the state norm).
 */
template <QuantumState S>
[[nodiscard]] double expval(const S &psi, const PauliSum &o) {
    if (!o.is_hermitian()) {
        throw std::invalid_argument("expval requires a Hermitian operator");
    }
    const cplx v = expectation(psi, o);
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
        throw std::runtime_error("expectation has a non-negligible imaginary part");
    }
    return v.real();
}

template <QuantumState S>
[[nodiscard]] double expval(const S &psi, const PauliString &p) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("expval requires a Hermitian operator");
    }
    return expectation(psi, p).real();
}

/// Converts a sparse state to a dense one (register must fit).
[[nodiscard]] inline StateVector to_dense(const SparseState &s) {
    StateVector out(s.num_qubits());
    for (const auto &[i, a] : s.data()) {
        out[i] = a;
    }
    return out;
}

/**
 * Debug dump: uint32 register size, then interleaved (re, im) float64 per
 * amplitude, all little-endian. Not a stability-guaranteed format.
 */
inline void write_amplitudes(std::ostream &os, const StateVector &s) {
    static_assert(std::endian::native == std::endian::little,
                  "amplitude dump assumes a little-endian host");
    const auto n = static_cast<std::uint32_t>(s.num_qubits());
    os.write(reinterpret_cast<const char *>(&n), sizeof n);
    for (const cplx &a : s.data()) {
        const double re = a.real();
        const double im = a.imag();
        os.write(reinterpret_cast<const char *>(&re), sizeof re);
        os.write(reinterpret_cast<const char *>(&im), sizeof im);
    }
}

[[nodiscard]] inline StateVector read_amplitudes(std::istream &is) {
    std::uint32_t n = 0;
    if (!is.read(reinterpret_cast<char *>(&n), sizeof n)) {
        throw std::runtime_error("truncated amplitude dump header");
    }
    StateVector s(static_cast<int>(n));
    for (auto &a : s.data()) {
        double re = 0.0;
        double im = 0.0;
        is.read(reinterpret_cast<char *>(&re), sizeof re);
        is.read(reinterpret_cast<char *>(&im), sizeof im);
        if (!is) {
            throw std::runtime_error("truncated amplitude dump body");
        }
        a = {re, im};
    }
    return s;
}

} // namespace f2q
