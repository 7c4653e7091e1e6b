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
 * Exact diagonalization of the spinless t-V model in the fermionic Fock
 * space, with no auxiliary qubits. Fermion signs follow a row-major
 * Jordan-Wigner ordering; hopping across the x (y) boundary is multiplied by
 * the sector sign sx (sy).
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lattice.hpp"
#include "operators.hpp"

namespace f2q {

struct BCSector {
    int sx = 1;
    int sy = 1;
    friend bool operator==(const BCSector &, const BCSector &) = default;
};

[[nodiscard]] inline std::string to_string(const BCSector &s) {
    return std::string(s.sx > 0 ? "P" : "A") + (s.sy > 0 ? "P" : "A");
}

[[nodiscard]] inline std::vector<BCSector> all_sectors() {
    return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
}

inline constexpr int kMaxOracleSites = 12;

/// Occupation bitmasks over N sites with exactly n_f bits set, ascending.
[[nodiscard]] inline std::vector<std::uint32_t> fock_basis(int n_sites, int n_f) {
    if (n_sites > kMaxOracleSites || n_sites <= 0) {
        throw std::length_error("fermionic oracle limited to 12 sites");
    }
    if (n_f < 0 || n_f > n_sites) {
        throw std::invalid_argument("particle number outside [0, N]");
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << n_sites); ++m) {
        if (std::popcount(m) == n_f) {
            out.push_back(m);
        }
    }
    return out;
}

/**
 * H = -t sum_e s_e (c_i^dag c_j + h.c.) + V sum_e n_i n_j + sum_r mu_r n_r over
 * the Fock basis at fixed n_f, with s_e the sector sign of boundary edges.
 */
[[nodiscard]] inline Eigen::SparseMatrix<double>
ed_hamiltonian(const LatticeSpec &spec, double t, double v, const Potentials &potentials,
               BCSector sector, int n_f) {
    const int n = spec.num_sites();
    const auto basis = fock_basis(n, n_f);
    std::unordered_map<std::uint32_t, int> index;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        index[basis[k]] = static_cast<int>(k);
    }
    std::vector<double> mu(static_cast<std::size_t>(n), 0.0);
    for (const auto &[xy, m] : potentials) {
        mu[static_cast<std::size_t>(site_index(spec, {xy.first, xy.second}))] += m;
    }
    const auto all = edges(spec);
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const std::uint32_t m = basis[k];
        double diag = 0.0;
        for (int r = 0; r < n; ++r) {
            if ((m >> r) & 1u) {
                diag += mu[static_cast<std::size_t>(r)];
            }
        }
        for (const Edge &e : all) {
            const int i = site_index(spec, e.origin);
            const int j = site_index(spec, edge_target(spec, e));
            const bool ni = (m >> i) & 1u;
            const bool nj = (m >> j) & 1u;
            if (ni && nj) {
                diag += v;
            }
            if (ni == nj) {
                continue;
            }
            // Move the particle from the occupied end to the empty one.
            const int from = ni ? i : j;
            const int to = ni ? j : i;
            const int lo = std::min(from, to);
            const int hi = std::max(from, to);
            const std::uint32_t between = m & (((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u));
            const double jw = (std::popcount(between) % 2 == 0) ? 1.0 : -1.0;
            double bc = 1.0;
            if (edge_wraps(spec, e)) {
                bc = e.direction == Direction::X ? sector.sx : sector.sy;
            }
            const std::uint32_t m2 = (m & ~(1u << from)) | (1u << to);
            trips.emplace_back(index.at(m2), static_cast<int>(k), -t * bc * jw);
        }
        if (diag != 0.0) {
            trips.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
        }
    }
    const auto d = static_cast<Eigen::Index>(basis.size());
    Eigen::SparseMatrix<double> h(d, d);
    h.setFromTriplets(trips.begin(), trips.end());
    return h;
}

struct EDResult {
    std::vector<double> energies;               ///< ascending
    Eigen::MatrixXd vectors;                    ///< columns, if requested
    std::vector<std::uint32_t> basis;           ///< Fock basis of the sector
    std::vector<double> times;                  ///< propagation grid
    std::vector<std::vector<double>> occupations; ///< [time][site]
};

inline constexpr Eigen::Index kMaxOracleDenseDim = 4096;

[[nodiscard]] inline EDResult ed_spectrum(const LatticeSpec &spec, double t, double v,
                                          const Potentials &potentials, BCSector sector,
                                          int n_f, bool with_vectors = false) {
    const Eigen::MatrixXd h(ed_hamiltonian(spec, t, v, potentials, sector, n_f));
    if (h.rows() > kMaxOracleDenseDim) {
        throw std::length_error("oracle sector too large for a dense solve");
    }
    EDResult out;
    out.basis = fock_basis(spec.num_sites(), n_f);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        h, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    out.energies.assign(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
    if (with_vectors) {
        out.vectors = es.eigenvectors();
    }
    return out;
}

struct EDGround {
    double energy = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
};

[[nodiscard]] inline EDGround ed_ground(const LatticeSpec &spec, double t, double v,
                                        const Potentials &potentials, BCSector sector,
                                        int n_f) {
    const Eigen::SparseMatrix<double> hs = ed_hamiltonian(spec, t, v, potentials, sector, n_f);
    const Eigen::MatrixXd h(hs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    EDGround g;
    g.energy = es.eigenvalues()(0);
    g.vector = es.eigenvectors().col(0);
    g.residual = (h * g.vector - g.energy * g.vector).norm();
    if (g.residual > 1e-10) {
        throw std::runtime_error("oracle ground-state residual above 1e-10");
    }
    return g;
}

/// <n_r> for every site of a Fock-space vector.
[[nodiscard]] inline std::vector<double> ed_occupations(const std::vector<std::uint32_t> &basis,
                                                        const Eigen::VectorXcd &psi,
                                                        int n_sites) {
    std::vector<double> occ(static_cast<std::size_t>(n_sites), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double p = std::norm(psi[static_cast<Eigen::Index>(k)]);
        for (int r = 0; r < n_sites; ++r) {
            if ((basis[k] >> r) & 1u) {
                occ[static_cast<std::size_t>(r)] += p;
            }
        }
    }
    return occ;
}

/**
 * Evolves `initial` under the sector Hamiltonian by exact eigendecomposition
 * and records <n_r(t)> at each time.
 */
[[nodiscard]] inline EDResult ed_propagate(const LatticeSpec &spec, double t, double v,
                                           const Potentials &potentials,
                                           const Eigen::VectorXcd &initial, BCSector sector,
                                           int n_f, const std::vector<double> &times) {
    EDResult out = ed_spectrum(spec, t, v, potentials, sector, n_f, true);
    if (initial.size() != static_cast<Eigen::Index>(out.basis.size())) {
        throw std::invalid_argument("initial vector does not match the sector");
    }
    if (std::abs(initial.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("initial vector must be normalized");
    }
    const Eigen::MatrixXcd u = out.vectors.cast<cplx>();
    const Eigen::VectorXcd c0 = u.adjoint() * initial;
    out.times = times;
    for (double tau : times) {
        Eigen::VectorXcd c = c0;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            c[k] *= std::exp(cplx(0, -out.energies[static_cast<std::size_t>(k)] * tau));
        }
        const Eigen::VectorXcd psi = u * c;
        if (std::abs(psi.norm() - 1.0) > 1e-10) {
            throw std::runtime_error("oracle propagation lost normalization");
        }
        out.occupations.push_back(ed_occupations(out.basis, psi, spec.num_sites()));
    }
    return out;
}

struct SectorMatch {
    BCSector sector;
    double deviation = std::numeric_limits<double>::infinity();
    bool matched = false;
    std::vector<double> deviations; ///< per entry of all_sectors()
};

/**
 * Compares an encoded-space spectrum (sorted) with the union of fermionic
 * spectra over `n_fs` for each BC sector and returns the closest sector.
 * Sectors whose spectrum length differs get deviation +inf.
 */
[[nodiscard]] inline SectorMatch match_sector(const LatticeSpec &spec, double t, double v,
                                              const Potentials &potentials,
                                              const std::vector<int> &n_fs,
                                              std::vector<double> encoded, double tol = 1e-8) {
    std::sort(encoded.begin(), encoded.end());
    SectorMatch best;
    for (const BCSector &s : all_sectors()) {
        std::vector<double> ref;
        for (int nf : n_fs) {
            const auto part = ed_spectrum(spec, t, v, potentials, s, nf).energies;
            ref.insert(ref.end(), part.begin(), part.end());
        }
        std::sort(ref.begin(), ref.end());
        double dev = std::numeric_limits<double>::infinity();
        if (ref.size() == encoded.size()) {
            dev = 0.0;
            for (std::size_t k = 0; k < ref.size(); ++k) {
                dev = std::max(dev, std::abs(ref[k] - encoded[k]));
            }
        }
        best.deviations.push_back(dev);
        if (dev < best.deviation) {
            best.deviation = dev;
            best.sector = s;
        }
    }
    best.matched = best.deviation < tol;
    return best;
}

} // namespace f2q
