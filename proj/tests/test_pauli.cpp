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

#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace f2q {
namespace {

using testing::dense;

PauliString letters(const LatticeSpec &spec,
                    std::initializer_list<std::pair<int, Pauli>> items) {
    return make_pauli(static_cast<std::size_t>(spec.num_qubits()), items);
}

bool same_operator(const PauliString &a, const PauliString &b) {
    return a.letters() == b.letters() && a.phase_exponent() % 4 == b.phase_exponent() % 4;
}

double coefficient_of(const PauliSum &s, const PauliString &p) {
    double c = 0.0;
    for (const auto &t : s.terms()) {
        if (t.string.letters() == p.letters()) {
            c += t.coefficient.real();
        }
    }
    return c;
}

TEST(PauliAlgebra, XTimesYIsIZ) {
    const auto x = make_pauli(1, {{0, Pauli::X}});
    const auto y = make_pauli(1, {{0, Pauli::Y}});
    const auto p = multiply(x, y);
    EXPECT_EQ(p[0], Pauli::Z);
    EXPECT_EQ(p.phase(), cplx(0, 1));
    const auto q = multiply(y, x);
    EXPECT_EQ(q.phase(), cplx(0, -1));
}

TEST(PauliAlgebra, SquareIsPhaseSquaredIdentity) {
    const auto s = make_pauli(3, {{0, Pauli::X}, {1, Pauli::Y}, {2, Pauli::Z}}, 1);
    const auto sq = multiply(s, s);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.phase(), s.phase() * s.phase());
}

TEST(PauliAlgebra, CommutationExamples) {
    EXPECT_TRUE(commutes(make_pauli(2, {{0, Pauli::X}, {1, Pauli::X}}),
                         make_pauli(2, {{0, Pauli::Z}, {1, Pauli::Z}})));
    EXPECT_FALSE(commutes(make_pauli(2, {{0, Pauli::X}}), make_pauli(2, {{0, Pauli::Z}})));
}

TEST(PauliAlgebra, ProductAndCommutationAgreeWithDenseMatrices) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_int_distribution<int> ph(0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        PauliString a(3);
        PauliString b(3);
        for (std::size_t q = 0; q < 3; ++q) {
            a.mul_at(q, static_cast<Pauli>(letter(rng)));
            b.mul_at(q, static_cast<Pauli>(letter(rng)));
        }
        a.set_phase_exponent(ph(rng));
        const auto da = dense(a);
        const auto db = dense(b);
        EXPECT_LT((dense(multiply(a, b)) - da * db).cwiseAbs().maxCoeff(), 1e-14);
        const bool dense_commute = (da * db - db * da).cwiseAbs().maxCoeff() < 1e-12;
        EXPECT_EQ(commutes(a, b), dense_commute);
    }
}

TEST(PauliAlgebra, TextRoundTrip) {
    const auto s = make_pauli(6, {{0, Pauli::Z}, {3, Pauli::Y}, {5, Pauli::X}}, 3);
    const auto back = parse_pauli(to_string(s), 6);
    EXPECT_TRUE(same_operator(s, back));
    EXPECT_THROW((void)parse_pauli("+1 X7", 6), std::out_of_range);
    EXPECT_THROW((void)parse_pauli("+2 X0", 6), std::invalid_argument);
}

TEST(PauliSum, SimplifyMergesAndPrunes) {
    PauliSum s(2);
    const auto zz = make_pauli(2, {{0, Pauli::Z}, {1, Pauli::Z}});
    s.add(0.5, zz).add(0.25, zz).add(1e-14, make_pauli(2, {{0, Pauli::X}}));
    s.add(-0.75, zz);
    s.add(2.0, PauliString(2));
    s.simplify();
    ASSERT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s.identity_coefficient(), 2.0);
}

TEST(GaussString, FourByFourOrigin) {
    const auto spec = LatticeSpec::make(4, 4);
    const auto g = gauss_string(spec, {0, 0});
    const auto expected = letters(spec, {{phys(spec, {0, 0}), Pauli::Z},
                                         {phys(spec, {0, 1}), Pauli::Z},
                                         {aux(spec, {0, 0}), Pauli::Y},
                                         {aux(spec, {1, 1}), Pauli::Y},
                                         {aux(spec, {1, 0}), Pauli::X},
                                         {aux(spec, {0, 1}), Pauli::X}});
    EXPECT_TRUE(same_operator(g, expected));
}

TEST(GaussString, HermitianAndInvolutive) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}, std::pair{4, 4}}) {
        const auto spec = LatticeSpec::make(lx, ly);
        for (int i = 0; i < spec.num_sites(); ++i) {
            const auto g = gauss_string(spec, spec.site_at(i));
            EXPECT_TRUE(g.is_hermitian());
            const auto sq = multiply(g, g);
            EXPECT_TRUE(sq.is_identity());
            EXPECT_EQ(sq.phase(), cplx(1, 0));
        }
    }
}

TEST(GaussString, EqualsPlaquetteTimesPhysicalZ) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 4}}) {
        const auto spec = LatticeSpec::make(lx, ly);
        for (int i = 0; i < spec.num_sites(); ++i) {
            const Site r = spec.site_at(i);
            const auto z = letters(spec, {{phys(spec, r), Pauli::Z},
                                          {phys(spec, spec.shift(r, 0, 1)), Pauli::Z}});
            EXPECT_TRUE(same_operator(gauss_string(spec, r), multiply(plaquette_string(spec, r), z)));
        }
    }
}

TEST(PlaquetteString, ProductOverTorusIsScalar) {
    const auto spec = LatticeSpec::make(2, 2);
    PauliString prod(static_cast<std::size_t>(spec.num_qubits()));
    for (int i = 0; i < spec.num_sites(); ++i) {
        prod = multiply(prod, plaquette_string(spec, spec.site_at(i)));
    }
    EXPECT_TRUE(prod.is_identity());
    EXPECT_EQ(std::abs(prod.phase().real()), 1.0);
}

TEST(PlaquetteString, CommutesWithEveryGaussString) {
    const auto spec = LatticeSpec::make(3, 3);
    for (int i = 0; i < spec.num_sites(); ++i) {
        for (int j = 0; j < spec.num_sites(); ++j) {
            EXPECT_TRUE(commutes(plaquette_string(spec, spec.site_at(i)),
                                 gauss_string(spec, spec.site_at(j))));
        }
    }
}

TEST(ConstraintSet, LoopTargetsEvenLattice) {
    const auto cs = constraint_set(LatticeSpec::make(4, 4));
    ASSERT_EQ(cs.size(), 24u);
    for (std::size_t k = 16; k < 24; ++k) {
        EXPECT_EQ(cs.stabilizers[k].target, -1) << cs.stabilizers[k].label;
    }
}

TEST(ConstraintSet, LoopTargetsOddLattice) {
    const auto cs = constraint_set(LatticeSpec::make(3, 3));
    ASSERT_EQ(cs.size(), 15u);
    for (std::size_t k = 9; k < 15; ++k) {
        EXPECT_EQ(cs.stabilizers[k].target, 1) << cs.stabilizers[k].label;
    }
}

TEST(ConstraintSet, GaussTargetsArePlusOne) {
    const auto cs = constraint_set(LatticeSpec::make(2, 4));
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_EQ(cs.stabilizers[k].target, 1);
        EXPECT_EQ(cs.stabilizers[k].label.substr(0, 1), "G");
    }
}

TEST(Hopping, XEdgeCoefficients) {
    const auto spec = LatticeSpec::make(4, 4);
    const auto h = hopping_terms(spec, {{1, 2}, Direction::X});
    ASSERT_EQ(h.size(), 2u);
    for (const auto &t : h.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient.real(), 0.5);
        EXPECT_DOUBLE_EQ(t.coefficient.imag(), 0.0);
    }
}

TEST(Hopping, XEdgeCarriesRho) {
    const auto spec = LatticeSpec::make(3, 3);
    const PauliSum terms = hopping_terms(spec, {{0, 0}, Direction::X});
    for (const auto &t : terms.terms()) {
        EXPECT_DOUBLE_EQ(t.coefficient.real(), -0.5);
    }
}

TEST(Hopping, YEdgeCoefficients) {
    const auto spec = LatticeSpec::make(4, 4);
    const Site r{1, 1};
    const Site s{1, 2};
    const auto h = hopping_terms(spec, {r, Direction::Y});
    const auto xy = letters(spec, {{phys(spec, r), Pauli::X}, {phys(spec, s), Pauli::Y},
                                   {aux(spec, r), Pauli::Y}, {aux(spec, s), Pauli::X}});
    const auto yx = letters(spec, {{phys(spec, r), Pauli::Y}, {phys(spec, s), Pauli::X},
                                   {aux(spec, r), Pauli::Y}, {aux(spec, s), Pauli::X}});
    EXPECT_DOUBLE_EQ(coefficient_of(h, xy), -0.5);
    EXPECT_DOUBLE_EQ(coefficient_of(h, yx), 0.5);
}

TEST(Hopping, CommutesWithAllConstraints) {
    const auto spec = LatticeSpec::make(2, 4);
    const auto cs = constraint_set(spec);
    for (const Edge &e : edges(spec)) {
        const PauliSum terms = hopping_terms(spec, e);
        for (const auto &t : terms.terms()) {
            for (const auto &s : cs.stabilizers) {
                EXPECT_TRUE(commutes(t.string, s.string)) << s.label;
            }
        }
    }
}

TEST(Interaction, ExpansionCoefficients) {
    const auto spec = LatticeSpec::make(2, 2);
    const Edge e{{0, 0}, Direction::Y};
    const double v = 1.7;
    const auto h = tv_hamiltonian(spec, 0.0, v);
    // Doubled width-2 edges: each site pair appears twice in the sum.
    const int a = phys(spec, e.origin);
    const int b = phys(spec, edge_target(spec, e));
    EXPECT_NEAR(coefficient_of(h, letters(spec, {{a, Pauli::Z}, {b, Pauli::Z}})), 2 * v / 4, 1e-15);
    const auto single = interaction_terms(spec, e);
    EXPECT_DOUBLE_EQ(coefficient_of(single, PauliString(8)), 0.25);
    EXPECT_DOUBLE_EQ(coefficient_of(single, letters(spec, {{a, Pauli::Z}})), -0.25);
    EXPECT_DOUBLE_EQ(coefficient_of(single, letters(spec, {{b, Pauli::Z}})), -0.25);
    EXPECT_DOUBLE_EQ(coefficient_of(single, letters(spec, {{a, Pauli::Z}, {b, Pauli::Z}})), 0.25);
}

TEST(Hamiltonian, QuenchPotentials) {
    const auto p = quench_potentials(1.0);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_DOUBLE_EQ(p.at({0, 0}), -1.0);
    EXPECT_DOUBLE_EQ(p.at({0, 1}), -1.0);
}

TEST(Hamiltonian, CommutesWithGaussStrings) {
    const auto spec = LatticeSpec::make(2, 4);
    const auto h = tv_hamiltonian(spec, 1.0, 2.5, quench_potentials(1.0));
    for (int i = 0; i < spec.num_sites(); ++i) {
        PauliSum g(static_cast<std::size_t>(spec.num_qubits()));
        g.add(1.0, gauss_string(spec, spec.site_at(i)));
        EXPECT_EQ(commutator(h, g).simplify().size(), 0u);
    }
}

TEST(Hamiltonian, NumberSumCommutesWithHamiltonian) {
    const auto spec = LatticeSpec::make(2, 2);
    const auto h = testing::dense(tv_hamiltonian(spec, 1.0, 2.0));
    const auto n = testing::dense(number_sum(spec));
    EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hamiltonian, HermitianRealCoefficients) {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3}}) {
        const auto spec = LatticeSpec::make(lx, ly);
        const auto h = tv_hamiltonian(spec, 1.0, 3.0, quench_potentials(0.5));
        EXPECT_TRUE(h.is_hermitian());
        for (const auto &t : h.terms()) {
            EXPECT_EQ(t.coefficient.imag(), 0.0);
            EXPECT_TRUE(t.string.is_hermitian());
        }
    }
}

TEST(Hamiltonian, TermsAreLocalToOneEdge) {
    const auto spec = LatticeSpec::make(4, 4);
    for (const Edge &e : edges(spec)) {
        const PauliSum terms = hopping_terms(spec, e);
        for (const auto &t : terms.terms()) {
            EXPECT_LE(t.string.support().size(), 4u);
        }
        const PauliSum inter = interaction_terms(spec, e);
        for (const auto &t : inter.terms()) {
            EXPECT_LE(t.string.support().size(), 2u);
        }
    }
}

class ConstraintAlgebra : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(ConstraintAlgebra, StabilizersCommutePairwise) {
    const auto [lx, ly] = GetParam();
    const auto cs = constraint_set(LatticeSpec::make(lx, ly));
    for (const auto &a : cs.stabilizers) {
        EXPECT_TRUE(a.string.is_hermitian());
        for (const auto &b : cs.stabilizers) {
            EXPECT_TRUE(commutes(a.string, b.string)) << a.label << " vs " << b.label;
        }
    }
}

TEST_P(ConstraintAlgebra, StabilizersCommuteWithEveryHamiltonianTerm) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    const auto cs = constraint_set(spec);
    const auto h = tv_hamiltonian(spec, 0.7, 1.9, {{{1, 1}, 0.3}, {{0, 1}, -1.1}});
    for (const auto &t : h.terms()) {
        for (const auto &s : cs.stabilizers) {
            EXPECT_TRUE(commutes(t.string, s.string)) << s.label;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, ConstraintAlgebra,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 4}, std::pair{3, 3},
                                           std::pair{4, 4}, std::pair{5, 5}));

} // namespace
} // namespace f2q
