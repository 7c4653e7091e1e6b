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

#include <algorithm>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include <f2q/quench.hpp>

#include "test_util.hpp"

namespace f2q {
namespace {

using Eigen::MatrixXd;

std::vector<double> dense_eigenvalues(const Eigen::SparseMatrix<double> &h) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es{MatrixXd(h)};
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

// Tight-binding levels -2t(cos kx + cos ky) with twisted momenta.
std::vector<double> single_particle_levels(const LatticeSpec &spec, double t, BCSector s) {
    constexpr double pi = std::numbers::pi;
    std::vector<double> out;
    for (int mx = 0; mx < spec.lx(); ++mx) {
        for (int my = 0; my < spec.ly(); ++my) {
            const double kx = (2 * pi * mx + (s.sx < 0 ? pi : 0.0)) / spec.lx();
            const double ky = (2 * pi * my + (s.sy < 0 ? pi : 0.0)) / spec.ly();
            out.push_back(-2.0 * t * (std::cos(kx) + std::cos(ky)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double max_gap(const std::vector<double> &a, const std::vector<double> &b) {
    EXPECT_EQ(a.size(), b.size());
    double d = 0.0;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

TEST(FockBasis, SizesAndErrors) {
    EXPECT_EQ(fock_basis(4, 2).size(), 6u);
    EXPECT_EQ(fock_basis(8, 2).size(), 28u);
    EXPECT_EQ(fock_basis(9, 0).size(), 1u);
    EXPECT_THROW((void)fock_basis(13, 2), std::length_error);
    EXPECT_THROW((void)fock_basis(4, 5), std::invalid_argument);
    const auto b = fock_basis(6, 3);
    EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
}

TEST(EdHamiltonian, ZeroHoppingIsClassicalDiagonal) {
    const auto spec = LatticeSpec::make(2, 4);
    const Potentials pot = {{{0, 0}, -0.7}, {{1, 2}, 0.4}};
    const auto h = MatrixXd(ed_hamiltonian(spec, 0.0, 1.5, pot, {}, 3));
    const auto basis = fock_basis(8, 3);
    EXPECT_EQ(h.rows(), 56);
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        double want = 1.5 * testing::adjacent_pairs(spec, basis[static_cast<std::size_t>(i)]);
        for (const auto &[xy, mu] : pot) {
            if ((basis[static_cast<std::size_t>(i)] >> site_index(spec, {xy.first, xy.second})) & 1u) {
                want += mu;
            }
        }
        EXPECT_DOUBLE_EQ(h(i, i), want);
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            if (i != j) {
                EXPECT_EQ(h(i, j), 0.0);
            }
        }
    }
}

TEST(EdHamiltonian, SymmetricInEverySector) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
        const auto spec = LatticeSpec::make(lx, ly);
        for (const auto &s : all_sectors()) {
            for (int nf = 0; nf <= spec.num_sites(); nf += 3) {
                const MatrixXd h(ed_hamiltonian(spec, 0.9, 1.3, quench_potentials(0.5), s, nf));
                EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
            }
        }
    }
}

TEST(EdHamiltonian, SingleParticleMatchesTightBinding) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}, std::pair{4, 2}}) {
        const auto spec = LatticeSpec::unchecked(lx, ly, 1);
        for (const auto &s : all_sectors()) {
            const auto ed = dense_eigenvalues(ed_hamiltonian(spec, 1.0, 0.0, {}, s, 1));
            EXPECT_LT(max_gap(ed, single_particle_levels(spec, 1.0, s)), 1e-12)
                << lx << "x" << ly << " " << to_string(s);
        }
    }
}

class FreeFermion : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(FreeFermion, GroundIsFilledLowestLevels) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    for (const auto &s : all_sectors()) {
        const auto levels = single_particle_levels(spec, 1.0, s);
        for (int nf = 0; nf <= spec.num_sites(); ++nf) {
            const double want = std::accumulate(levels.begin(), levels.begin() + nf, 0.0);
            EXPECT_NEAR(ed_ground(spec, 1.0, 0.0, {}, s, nf).energy, want, 1e-10)
                << to_string(s) << " nf=" << nf;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, FreeFermion,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}));

TEST(EdGround, EmptySectorIsZero) {
    EXPECT_EQ(ed_ground(LatticeSpec::make(2, 4), 1.0, 3.0, {}, {}, 0).energy, 0.0);
}

TEST(EdGround, ResidualIsSmall) {
    const auto g = ed_ground(LatticeSpec::make(3, 3), 1.0, 2.0, quench_potentials(1.0), {-1, 1}, 4);
    EXPECT_LT(g.residual, 1e-10);
    EXPECT_NEAR(g.vector.norm(), 1.0, 1e-12);
}

TEST(EdSpectrum, HoppingSignFlipOnBipartiteLattices) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}}) {
        const auto spec = LatticeSpec::make(lx, ly);
        for (const auto &s : all_sectors()) {
            const auto a = ed_spectrum(spec, 1.0, 1.7, {}, s, 3).energies;
            const auto b = ed_spectrum(spec, -1.0, 1.7, {}, s, 3).energies;
            EXPECT_LT(max_gap(a, b), 1e-10);
        }
    }
}

TEST(EdSpectrum, ClassicalLimitIsSortedDiagonal) {
    const auto spec = LatticeSpec::make(3, 3);
    const auto basis = fock_basis(9, 4);
    std::vector<double> want;
    for (auto m : basis) {
        want.push_back(2.0 * testing::adjacent_pairs(spec, m));
    }
    std::sort(want.begin(), want.end());
    EXPECT_LT(max_gap(ed_spectrum(spec, 0.0, 2.0, {}, {}, 4).energies, want), 1e-12);
    EXPECT_NEAR(want.front(), testing::classical_ground(spec, 2.0, 4), 1e-12);
}

TEST(EdSpectrum, TraceMatchesDiagonalSum) {
    const auto spec = LatticeSpec::make(2, 4);
    const auto pot = quench_potentials(1.0);
    const auto h = ed_hamiltonian(spec, 1.0, 3.0, pot, {1, -1}, 4);
    const auto e = ed_spectrum(spec, 1.0, 3.0, pot, {1, -1}, 4).energies;
    EXPECT_NEAR(std::accumulate(e.begin(), e.end(), 0.0), MatrixXd(h).trace(), 1e-9);
}

TEST(EdPropagate, ClassicalOccupationsStayPut) {
    const auto spec = LatticeSpec::make(2, 4);
    const auto basis = fock_basis(8, 2);
    Eigen::VectorXcd init = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
    init[5] = 1.0;
    const auto r = ed_propagate(spec, 0.0, 3.0, {}, init, {}, 2, {0.0, 0.5, 1.7});
    ASSERT_EQ(r.occupations.size(), 3u);
    for (const auto &occ : r.occupations) {
        for (int s = 0; s < 8; ++s) {
            EXPECT_NEAR(occ[static_cast<std::size_t>(s)], (basis[5] >> s) & 1u, 1e-12);
        }
    }
}

TEST(EdPropagate, OccupationsSumToParticleNumber) {
    const auto spec = LatticeSpec::make(3, 3);
    const auto g = ed_ground(spec, 1.0, 0.0, quench_potentials(1.0), {}, 2);
    const auto r = ed_propagate(spec, 1.0, 3.0, {}, g.vector.cast<cplx>(), {}, 2, {0.0, 0.3, 1.0, 2.5});
    for (const auto &occ : r.occupations) {
        EXPECT_NEAR(std::accumulate(occ.begin(), occ.end(), 0.0), 2.0, 1e-10);
    }
    // Eigenstate of the pre-quench Hamiltonian does not move under it.
    const auto still = ed_propagate(spec, 1.0, 0.0, quench_potentials(1.0), g.vector.cast<cplx>(), {}, 2, {0.0, 2.0});
    for (std::size_t s = 0; s < 9; ++s) {
        EXPECT_NEAR(still.occupations[0][s], still.occupations[1][s], 1e-10);
    }
}

TEST(EdPropagate, RejectsBadInitialVector) {
    const auto spec = LatticeSpec::make(2, 2);
    EXPECT_THROW((void)ed_propagate(spec, 1, 1, {}, Eigen::VectorXcd::Ones(3), {}, 2, {0.0}),
                 std::invalid_argument);
    EXPECT_THROW((void)ed_propagate(spec, 1, 1, {}, Eigen::VectorXcd::Ones(6), {}, 2, {0.0}),
                 std::invalid_argument);
}

// --- encoded spectrum against the fermionic oracle -------------------------

TEST(SpectrumEquivalence, TwoByTwoWholeSubspace) {
    const auto spec = LatticeSpec::make(2, 2);
    const auto basis = constrained_basis(spec, constraint_set(spec));
    for (double v : {0.0, 2.0, 0.731}) {
        const auto enc = subspace_spectrum(tv_hamiltonian(spec, 1.0, v), basis);
        const auto m = match_sector(spec, 1.0, v, {}, {0, 2, 4}, enc);
        EXPECT_TRUE(m.matched) << "V=" << v << " deviation " << m.deviation;
    }
}

class SectorEquivalence : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(SectorEquivalence, FixedNumberMatchesOneSector) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    const auto cs = constraint_set(spec);
    const auto basis = sector_basis(spec, cs, 2);
    for (double v : {0.0, 3.0}) {
        const auto enc = sector_spectrum(tv_hamiltonian(spec, 1.0, v), spec, basis, 2);
        const auto m = match_sector(spec, 1.0, v, {}, {2}, enc);
        EXPECT_TRUE(m.matched) << "V=" << v << " deviation " << m.deviation;
        EXPECT_EQ(m.deviations.size(), 4u);
        EXPECT_EQ(m.sector, matched_sector(spec, 2));
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, SectorEquivalence,
                         ::testing::Values(std::pair{2, 4}, std::pair{3, 3}));

TEST(SpectrumEquivalence, PotentialsMatchToo) {
    const auto spec = LatticeSpec::make(2, 4);
    const auto pot = quench_potentials(1.0);
    const auto enc = sector_spectrum(tv_hamiltonian(spec, 1.0, 0.0, pot), spec,
                                     sector_basis(spec, constraint_set(spec), 2), 2);
    const auto m = match_sector(spec, 1.0, 0.0, pot, {2}, enc);
    EXPECT_TRUE(m.matched);
    EXPECT_EQ(m.sector, matched_sector(spec, 2));
}

TEST(SpectrumEquivalence, TwoByFourMatchesPeriodicSector) {
    EXPECT_EQ(matched_sector(LatticeSpec::make(2, 4), 2), (BCSector{1, 1}));
}

TEST(SpectrumEquivalence, LengthMismatchIsInfinite) {
    const auto spec = LatticeSpec::make(2, 2);
    const auto m = match_sector(spec, 1.0, 0.0, {}, {2}, {0.0, 1.0});
    EXPECT_FALSE(m.matched);
    for (double d : m.deviations) {
        EXPECT_TRUE(std::isinf(d));
    }
}

// --- quench driver ---------------------------------------------------------

TEST(Quench, ShortRunAgreesWithOracle) {
    QuenchConfig q;
    q.tmax = 0.4;
    const auto r = run_quench(q);
    ASSERT_EQ(r.times.size(), 5u);
    EXPECT_LT(r.reference_gap, 1e-8);
    EXPECT_LT(r.max_constraint_violation, 1e-10);
    EXPECT_GT(r.initial_gap, 1e-6);
    for (std::size_t s = 0; s < 8; ++s) {
        EXPECT_NEAR(r.occ_trotter[0][s], r.occ_fermionic[0][s], 1e-8);
    }
    for (const auto &occ : r.occ_trotter) {
        EXPECT_NEAR(std::accumulate(occ.begin(), occ.end(), 0.0), 2.0, 1e-10);
    }
    // The lowered sites (0,0) and (0,1) hold more than their uniform share.
    EXPECT_GT(r.occ_fermionic[0][0] + r.occ_fermionic[0][2], 0.5);
}

TEST(Quench, StepCountValidation) {
    QuenchConfig q;
    q.dt = 0.3;
    q.tmax = 1.0;
    EXPECT_THROW((void)q.steps(), std::invalid_argument);
    q.dt = 0.0;
    EXPECT_THROW((void)q.steps(), std::invalid_argument);
    q.dt = 0.1;
    q.tmax = 3.0;
    EXPECT_EQ(q.steps(), 30);
}

} // namespace
} // namespace f2q
