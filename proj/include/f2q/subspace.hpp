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
 * The constraint-satisfying subspace: an orthonormal basis obtained by
 * projecting computational basis states, and Hamiltonians restricted to it
 * (optionally to a fixed fermion number).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lattice.hpp"
#include "linalg.hpp"
#include "operators.hpp"
#include "state.hpp"

namespace f2q {

/// Sparse vector with strictly increasing indices.
using SparseVec = std::vector<std::pair<Index, cplx>>;

namespace detail {

inline void canonicalize(SparseVec &v, double drop = 1e-14) {
    std::sort(v.begin(), v.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (const auto &e : v) {
        if (!out.empty() && out.back().first == e.first) {
            out.back().second += e.second;
        } else {
            out.push_back(e);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [drop](const auto &e) { return std::abs(e.second) <= drop; }),
              out.end());
    v = std::move(out);
}

[[nodiscard]] inline cplx dot(const SparseVec &a, const SparseVec &b) {
    cplx acc{0, 0};
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first < b[j].first) {
            ++i;
        } else if (b[j].first < a[i].first) {
            ++j;
        } else {
            acc += std::conj(a[i].second) * b[j].second;
            ++i;
            ++j;
        }
    }
    return acc;
}

[[nodiscard]] inline double norm(const SparseVec &a) {
    double s = 0.0;
    for (const auto &e : a) {
        s += std::norm(e.second);
    }
    return std::sqrt(s);
}

/// a + c * b
[[nodiscard]] inline SparseVec axpy(const SparseVec &a, cplx c, const SparseVec &b) {
    SparseVec out = a;
    out.reserve(a.size() + b.size());
    for (const auto &e : b) {
        out.emplace_back(e.first, c * e.second);
    }
    canonicalize(out);
    return out;
}

struct CompiledString {
    Index x = 0;
    Index z = 0;
    int phase = 0;

    explicit CompiledString(const PauliString &p)
        : x(p.x_mask()), z(p.z_mask()), phase(p.phase_exponent() + p.y_count()) {}

    [[nodiscard]] SparseVec apply(const SparseVec &v) const {
        SparseVec out;
        out.reserve(v.size());
        for (const auto &[i, a] : v) {
            out.emplace_back(i ^ x, pauli_phase(phase, i, z) * a);
        }
        canonicalize(out);
        return out;
    }
};

[[nodiscard]] inline SparseVec apply_sum(const PauliSum &o, const SparseVec &v) {
    SparseVec out;
    out.reserve(v.size() * o.size());
    for (const auto &t : o.terms()) {
        const CompiledString s(t.string);
        for (const auto &[i, a] : v) {
            out.emplace_back(i ^ s.x, t.coefficient * pauli_phase(s.phase, i, s.z) * a);
        }
    }
    canonicalize(out);
    return out;
}

} // namespace detail

/**
 * @brief Orthonormal basis of the joint +target eigenspace of a ConstraintSet.
 *
 * Basis vectors are stored sparsely; each lives in one block of fixed values
 * on the qubits where every stabilizer acts as I or Z.
 */
struct SubspaceBasis {
    int n_qubits = 0;
    std::vector<SparseVec> vectors;

    [[nodiscard]] std::size_t dimension() const { return vectors.size(); }

    [[nodiscard]] StateVector to_state(const Eigen::VectorXcd &coeffs) const {
        StateVector out(n_qubits);
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            for (const auto &[i, a] : vectors[k]) {
                out[i] += coeffs[static_cast<Eigen::Index>(k)] * a;
            }
        }
        return out;
    }
};

inline constexpr int kMaxSubspaceQubits = 18;

/// Accepts or rejects a block by its fixed-qubit bits (scattered into place).
using BlockFilter = std::function<bool(Index)>;

/**
 * Orthonormal span of prod_s (1 + target_s S_s)/2 applied to the
 * computational basis.
 *
 * Qubits on which every stabilizer acts as I or Z split the space into blocks.
 * Inside a block the stabilizer group moves a basis state around an orbit
 * {i ^ x : x in span of the X masks}; the projection of any orbit member is
 * the same vector up to phase, and distinct orbits have disjoint support. One
 * projection per orbit therefore yields an orthonormal basis. The projector
 * trace is accumulated and checked against the number of accepted vectors.
 */
[[nodiscard]] inline SubspaceBasis constrained_basis(const ConstraintSet &cs,
                                                     const BlockFilter &keep = {}) {
    const int n = static_cast<int>(cs.num_qubits());
    if (n == 0) {
        throw std::invalid_argument("empty constraint set");
    }
    if (n > kMaxSubspaceQubits) {
        throw std::length_error("constrained_basis limited to 18 qubits");
    }
    Index flip_mask = 0;
    std::vector<detail::CompiledString> stabs;
    std::vector<int> targets;
    std::vector<Index> span_basis;
    for (const auto &s : cs.stabilizers) {
        if (static_cast<int>(s.string.size()) != n) {
            throw std::invalid_argument("stabilizer register size mismatch");
        }
        stabs.emplace_back(s.string);
        targets.push_back(s.target);
        flip_mask |= s.string.x_mask();
        // GF(2) elimination keeps span_basis reduced by leading bit.
        Index x = s.string.x_mask();
        for (Index b : span_basis) {
            x = std::min(x, x ^ b);
        }
        if (x != 0) {
            span_basis.push_back(x);
            std::sort(span_basis.begin(), span_basis.end(), std::greater<>());
        }
    }
    std::vector<Index> orbit{0};
    for (Index b : span_basis) {
        const std::size_t m = orbit.size();
        for (std::size_t k = 0; k < m; ++k) {
            orbit.push_back(orbit[k] ^ b);
        }
    }
    std::vector<int> free_qubits;
    std::vector<int> fixed_qubits;
    for (int q = 0; q < n; ++q) {
        ((flip_mask >> q) & 1 ? free_qubits : fixed_qubits).push_back(q);
    }
    auto scatter = [](Index bits, const std::vector<int> &pos) {
        Index out = 0;
        for (std::size_t m = 0; m < pos.size(); ++m) {
            if ((bits >> m) & 1) {
                out |= Index{1} << pos[m];
            }
        }
        return out;
    };

    SubspaceBasis basis;
    basis.n_qubits = n;
    const Index n_blocks = Index{1} << fixed_qubits.size();
    const Index n_free = Index{1} << free_qubits.size();
    std::vector<char> visited(static_cast<std::size_t>(n_free));
    std::unordered_map<Index, Index> free_pos;
    for (Index f = 0; f < n_free; ++f) {
        free_pos[scatter(f, free_qubits)] = f;
    }
    for (Index b = 0; b < n_blocks; ++b) {
        const Index base = scatter(b, fixed_qubits);
        if (keep && !keep(base)) {
            continue;
        }
        std::fill(visited.begin(), visited.end(), 0);
        double trace = 0.0;
        std::size_t accepted = 0;
        for (Index f = 0; f < n_free; ++f) {
            if (visited[static_cast<std::size_t>(f)]) {
                continue;
            }
            const Index start = scatter(f, free_qubits);
            for (Index x : orbit) {
                visited[static_cast<std::size_t>(free_pos.at(start ^ x))] = 1;
            }
            SparseVec v{{base | start, cplx{1, 0}}};
            for (std::size_t s = 0; s < stabs.size() && !v.empty(); ++s) {
                v = detail::axpy(v, static_cast<double>(targets[s]), stabs[s].apply(v));
                for (auto &e : v) {
                    e.second *= 0.5;
                }
            }
            const double nv = detail::norm(v);
            trace += static_cast<double>(orbit.size()) * nv * nv;
            if (nv < 1e-8) {
                continue;
            }
            for (auto &e : v) {
                e.second /= nv;
            }
            basis.vectors.push_back(std::move(v));
            ++accepted;
        }
        if (std::abs(trace - static_cast<double>(accepted)) > 1e-8) {
            throw std::runtime_error("projector rank mismatch in constrained_basis");
        }
    }
    if (basis.vectors.empty()) {
        throw std::runtime_error(keep ? "no constrained state in the selected blocks"
                                      : "constraint targets are inconsistent: empty subspace");
    }
    return basis;
}

[[nodiscard]] inline SubspaceBasis constrained_basis(const LatticeSpec &spec,
                                                     const ConstraintSet &cs) {
    if (static_cast<int>(cs.num_qubits()) != spec.num_qubits()) {
        throw std::invalid_argument("constraint set does not match lattice");
    }
    return constrained_basis(cs);
}

/**
 * Basis of the constrained subspace restricted to blocks with n_f occupied
 * physical qubits. Requires every stabilizer to act diagonally on the physical
 * register, which makes each block a fixed-N_f block.
 */
[[nodiscard]] inline SubspaceBasis sector_basis(const LatticeSpec &spec,
                                                const ConstraintSet &cs, int n_f) {
    const Index phys_mask = (Index{1} << spec.num_sites()) - 1;
    for (const auto &s : cs.stabilizers) {
        if ((s.string.x_mask() & phys_mask) != 0) {
            throw std::invalid_argument("sector_basis needs physical-diagonal constraints");
        }
    }
    SubspaceBasis b = constrained_basis(cs, [phys_mask, n_f](Index base) {
        return std::popcount(base & phys_mask) == n_f;
    });
    return b;
}

/// B^dag O B for a list of sparse vectors.
[[nodiscard]] inline Eigen::MatrixXcd restrict_operator(const PauliSum &o,
                                                        const std::vector<SparseVec> &vs) {
    const auto d = static_cast<Eigen::Index>(vs.size());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const SparseVec ov = detail::apply_sum(o, vs[static_cast<std::size_t>(j)]);
        for (Eigen::Index i = 0; i < d; ++i) {
            m(i, j) = detail::dot(vs[static_cast<std::size_t>(i)], ov);
        }
    }
    return m;
}

/**
 * Eigen-decomposition of the number operator inside the subspace:
 * eigenvalue -> orthonormal vectors spanning that eigenspace.
 */
[[nodiscard]] inline std::map<int, std::vector<SparseVec>>
number_sectors(const LatticeSpec &spec, const SubspaceBasis &basis) {
    const PauliSum nsum = number_sum(spec);
    std::map<int, std::vector<SparseVec>> out;
    bool diagonal = true;
    std::vector<int> values;
    for (const auto &v : basis.vectors) {
        const SparseVec nv = detail::apply_sum(nsum, v);
        const double mean = detail::dot(v, nv).real();
        const SparseVec r = detail::axpy(nv, -mean, v);
        if (detail::norm(r) > 1e-9) {
            diagonal = false;
            break;
        }
        values.push_back(static_cast<int>(std::lround(mean)));
    }
    if (diagonal) {
        for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
            out[values[k]].push_back(basis.vectors[k]);
        }
        return out;
    }
    if (basis.dimension() > 4096) {
        throw std::length_error("number-sector split too large for a dense solve");
    }
    const Eigen::MatrixXcd nm = restrict_operator(nsum, basis.vectors);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(nm);
    for (Eigen::Index c = 0; c < nm.cols(); ++c) {
        const int nf = static_cast<int>(std::lround(es.eigenvalues()(c)));
        SparseVec v;
        for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
            v = detail::axpy(v, es.eigenvectors()(static_cast<Eigen::Index>(k), c),
                             basis.vectors[k]);
        }
        out[nf].push_back(std::move(v));
    }
    return out;
}

/// Observed fermion numbers and their multiplicities inside the subspace.
[[nodiscard]] inline std::map<int, std::size_t>
number_spectrum(const LatticeSpec &spec, const SubspaceBasis &basis) {
    std::map<int, std::size_t> out;
    for (const auto &[nf, vs] : number_sectors(spec, basis)) {
        out[nf] = vs.size();
    }
    return out;
}

/// Sorted eigenvalues of H restricted to the whole constrained subspace.
[[nodiscard]] inline std::vector<double> subspace_spectrum(const PauliSum &h,
                                                           const SubspaceBasis &basis) {
    if (basis.dimension() > 4096) {
        throw std::length_error("subspace spectrum limited to dimension 4096");
    }
    const Eigen::MatrixXcd m = restrict_operator(h, basis.vectors);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

/// Sorted eigenvalues of H in the subspace at fixed fermion number.
[[nodiscard]] inline std::vector<double>
sector_spectrum(const PauliSum &h, const LatticeSpec &spec,
                const SubspaceBasis &basis, int n_f) {
    auto sectors = number_sectors(spec, basis);
    auto it = sectors.find(n_f);
    if (it == sectors.end()) {
        throw std::domain_error("fermion-number sector is empty in the constrained subspace");
    }
    const Eigen::MatrixXcd m = restrict_operator(h, it->second);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

struct SectorGround {
    double energy = 0.0;
    StateVector state;
    double residual = 0.0;
    std::size_t sector_dimension = 0;
};

/**
 * Lowest eigenpair of H restricted to (constrained subspace) x (N_f = n_f).
 * Dense solve up to dimension 2048, Lanczos beyond.
 */
[[nodiscard]] inline SectorGround ground_in_sector(const PauliSum &h,
                                                   const LatticeSpec &spec,
                                                   const SubspaceBasis &basis,
                                                   int n_f) {
    auto sectors = number_sectors(spec, basis);
    auto it = sectors.find(n_f);
    if (it == sectors.end()) {
        throw std::domain_error("fermion-number sector is empty in the constrained subspace");
    }
    const auto &vs = it->second;
    const Eigen::MatrixXcd m = restrict_operator(h, vs);
    const EigenPair gp = lowest_eigenpair(m);
    SectorGround out;
    out.energy = gp.value;
    out.sector_dimension = vs.size();
    out.residual = (m * gp.vector - gp.value * gp.vector).norm();
    if (out.residual > 1e-8) {
        throw std::runtime_error("sector ground state residual above 1e-8");
    }
    out.state = StateVector(basis.n_qubits);
    for (std::size_t k = 0; k < vs.size(); ++k) {
        for (const auto &[i, a] : vs[k]) {
            out.state[i] += gp.vector[static_cast<Eigen::Index>(k)] * a;
        }
    }
    return out;
}

[[nodiscard]] inline SectorGround ground_in_sector(const PauliSum &h,
                                                   const LatticeSpec &spec,
                                                   const ConstraintSet &cs,
                                                   int n_f) {
    return ground_in_sector(h, spec, sector_basis(spec, cs, n_f), n_f);
}

/// Largest |<S> - target| over all stabilizers.
template <QuantumState S>
[[nodiscard]] double max_constraint_violation(const S &psi, const ConstraintSet &cs) {
    double worst = 0.0;
    for (const auto &s : cs.stabilizers) {
        worst = std::max(worst, std::abs(expval(psi, s.string) - s.target));
    }
    return worst;
}

} // namespace f2q
