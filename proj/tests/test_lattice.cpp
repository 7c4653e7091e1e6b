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

#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include <f2q/lattice.hpp>

namespace f2q {
namespace {

const std::vector<std::pair<int, int>> kShapes = {{2, 2}, {2, 4}, {4, 2}, {3, 3},
                                                  {4, 4}, {3, 5}, {6, 6}};

TEST(LatticeSpec, RejectsMixedParity) {
    EXPECT_THROW(LatticeSpec(3, 4, -1), std::invalid_argument);
    EXPECT_THROW(LatticeSpec::make(2, 3), std::invalid_argument);
}

TEST(LatticeSpec, RejectsWrongRho) {
    EXPECT_THROW(LatticeSpec(4, 4, -1), std::invalid_argument);
    EXPECT_THROW(LatticeSpec(3, 3, 1), std::invalid_argument);
    EXPECT_THROW(LatticeSpec(2, 2, 0), std::invalid_argument);
}

TEST(LatticeSpec, RejectsDegenerateExtent) {
    EXPECT_THROW(LatticeSpec::make(1, 1), std::invalid_argument);
    EXPECT_THROW(LatticeSpec::make(0, 2), std::invalid_argument);
}

TEST(LatticeSpec, DefaultRhoFollowsParity) {
    EXPECT_EQ(LatticeSpec::make(4, 4).rho(), 1);
    EXPECT_EQ(LatticeSpec::make(3, 3).rho(), -1);
    EXPECT_EQ(LatticeSpec::unchecked(3, 3, 1).rho(), 1);
}

TEST(Edges, CountsOnSmallLattices) {
    EXPECT_EQ(edges(LatticeSpec::make(2, 2)).size(), 8u);
    EXPECT_EQ(edges(LatticeSpec::make(2, 4)).size(), 16u);
    EXPECT_EQ(edges(LatticeSpec::make(3, 3)).size(), 18u);
}

TEST(Edges, XEdgesPrecedeYEdgesRowMajor) {
    const auto spec = LatticeSpec::make(3, 3);
    const auto all = edges(spec);
    for (std::size_t k = 0; k < all.size(); ++k) {
        const int idx = static_cast<int>(k % 9);
        EXPECT_EQ(all[k].direction, k < 9 ? Direction::X : Direction::Y);
        EXPECT_EQ(all[k].origin, spec.site_at(idx));
    }
}

TEST(Edges, WidthTwoKeepsBothWraparoundEdges) {
    const auto spec = LatticeSpec::make(2, 4);
    std::map<std::pair<int, int>, int> multiplicity;
    for (const Edge &e : edges(spec, Direction::X)) {
        int a = site_index(spec, e.origin);
        int b = site_index(spec, edge_target(spec, e));
        ++multiplicity[{std::min(a, b), std::max(a, b)}];
    }
    ASSERT_EQ(multiplicity.size(), 4u);
    for (const auto &[pair, m] : multiplicity) {
        EXPECT_EQ(m, 2) << pair.first << "-" << pair.second;
    }
}

TEST(PlaquetteSites, WrapExamples) {
    using S = std::array<Site, 4>;
    EXPECT_EQ(plaquette_sites(LatticeSpec::make(3, 3), {2, 2}),
              (S{Site{2, 2}, Site{0, 2}, Site{0, 0}, Site{2, 0}}));
    EXPECT_EQ(plaquette_sites(LatticeSpec::make(4, 4), {0, 0}),
              (S{Site{0, 0}, Site{1, 0}, Site{1, 1}, Site{0, 1}}));
    EXPECT_EQ(plaquette_sites(LatticeSpec::make(2, 2), {1, 0}),
              (S{Site{1, 0}, Site{0, 0}, Site{0, 1}, Site{1, 1}}));
}

TEST(VacuumPlaquetteSet, AnchorCounts) {
    EXPECT_EQ(vacuum_plaquette_set(LatticeSpec::make(4, 4)).size(), 9u);
    const auto two = vacuum_plaquette_set(LatticeSpec::make(2, 2));
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0], (Site{0, 0}));
    EXPECT_EQ(vacuum_plaquette_set(LatticeSpec::make(3, 3)).size(), 4u);
}

TEST(VacuumPlaquetteSet, NoAnchorWraps) {
    for (auto [lx, ly] : kShapes) {
        const auto spec = LatticeSpec::make(lx, ly);
        for (const Site &r : vacuum_plaquette_set(spec)) {
            EXPECT_LT(r.rx, lx - 1);
            EXPECT_LT(r.ry, ly - 1);
        }
    }
}

class LatticeProperty : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(LatticeProperty, EdgeCountIsTwoN) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    EXPECT_EQ(edges(spec).size(), static_cast<std::size_t>(2 * spec.num_sites()));
}

TEST_P(LatticeProperty, QubitIndexIsBijection) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    std::set<int> seen;
    for (int i = 0; i < spec.num_sites(); ++i) {
        const Site s = spec.site_at(i);
        EXPECT_EQ(site_index(spec, s), i);
        for (System sys : {System::Physical, System::Auxiliary}) {
            const int q = qubit_index(spec, {s, sys});
            EXPECT_GE(q, 0);
            EXPECT_LT(q, spec.num_qubits());
            seen.insert(q);
        }
    }
    EXPECT_EQ(seen.size(), static_cast<std::size_t>(spec.num_qubits()));
}

TEST_P(LatticeProperty, EverySiteIsEachCornerOnce) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    std::vector<std::array<int, 4>> hits(static_cast<std::size_t>(spec.num_sites()));
    for (int i = 0; i < spec.num_sites(); ++i) {
        const auto corners = plaquette_sites(spec, spec.site_at(i));
        for (std::size_t c = 0; c < 4; ++c) {
            ++hits[static_cast<std::size_t>(site_index(spec, corners[c]))][c];
        }
    }
    for (const auto &h : hits) {
        EXPECT_EQ(h, (std::array<int, 4>{1, 1, 1, 1}));
    }
}

TEST_P(LatticeProperty, WrapIsIdempotentAndPeriodic) {
    const auto [lx, ly] = GetParam();
    const auto spec = LatticeSpec::make(lx, ly);
    for (int i = 0; i < spec.num_sites(); ++i) {
        const Site s = spec.site_at(i);
        EXPECT_EQ(spec.wrap(s), s);
        EXPECT_EQ(spec.shift(s, lx, -ly), s);
        EXPECT_EQ(spec.shift(spec.shift(s, 1, 1), -1, -1), s);
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, LatticeProperty, ::testing::ValuesIn(kShapes));

} // namespace
} // namespace f2q
