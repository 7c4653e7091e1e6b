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
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace f2q {
namespace {

VqeConfig small_config(AnsatzKind a, double v, int layers = 1) {
    VqeConfig c;
    c.ansatz = a;
    c.v = v;
    c.layers = layers;
    return c;
}

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

TEST(VqeProblem, AgateZeroParametersKeepInitialEnergy) {
    VqeConfig c = small_config(AnsatzKind::AGate, 1.5, 2);
    c.t = 0.0;
    const VqeProblem p(c);
    // Pair on the doubled x bond of the width-2 lattice: two occupied edges.
    EXPECT_NEAR(p.energy(std::vector<double>(64, 0.0)), 2 * 1.5, 1e-12);
    EXPECT_EQ(p.num_parameters(), 64);
}

TEST(VqeProblem, HvZeroParametersGiveFreeFermionEnergy) {
    const VqeProblem p(small_config(AnsatzKind::HV, 3.0, 2));
    const std::vector<double> zero(static_cast<std::size_t>(p.num_parameters()), 0.0);
    EXPECT_NEAR(p.energy(zero), expval(p.initial_state(), p.hamiltonian()), 1e-12);
    EXPECT_NEAR(p.energy(zero), p.energy_dense(zero), 1e-12);
}

TEST(VqeProblem, InitialStateInSector) {
    for (auto a : {AnsatzKind::AGate, AnsatzKind::HV}) {
        const VqeProblem p(small_config(a, 2.0));
        const auto cs = constraint_set(p.config().spec);
        EXPECT_LT(max_constraint_violation(p.initial_state(), cs), 1e-10);
        EXPECT_NEAR(expval(p.initial_state(), number_sum(p.config().spec)), 2.0, 1e-10);
        // The 28-dimensional sector needs at least 28 basis states of support.
        EXPECT_GE(p.support().size(), 28u);
        EXPECT_LT(p.support().size(), std::size_t{1} << 16);
    }
}

class VqeLandscape : public ::testing::TestWithParam<AnsatzKind> {};

TEST_P(VqeLandscape, RestrictedEnergyMatchesDense) {
    const VqeProblem p(small_config(GetParam(), 3.0));
    std::mt19937_64 rng(7);
    for (int k = 0; k < 3; ++k) {
        const auto x = testing::random_angles(p.num_parameters(), rng, 1.0);
        EXPECT_NEAR(p.energy(x), p.energy_dense(x), 1e-10);
    }
}

TEST_P(VqeLandscape, VariationalBound) {
    const VqeProblem p(small_config(GetParam(), 3.0));
    const double exact = exact_energy(p.config());
    std::mt19937_64 rng(11);
    for (int k = 0; k < 5; ++k) {
        EXPECT_GE(p.energy(testing::random_angles(p.num_parameters(), rng)), exact - 1e-10);
    }
}

TEST_P(VqeLandscape, AdjointGradientMatchesDenseAndFiniteDifference) {
    const VqeProblem p(small_config(GetParam(), 3.0));
    std::mt19937_64 rng(13);
    const auto x = testing::random_angles(p.num_parameters(), rng, 1.0);
    double e1 = 0.0;
    double e2 = 0.0;
    const auto g = p.gradient(x, &e1);
    const auto gd = p.gradient_dense(x, &e2);
    EXPECT_NEAR(e1, p.energy(x), 1e-12);
    EXPECT_NEAR(e2, e1, 1e-10);
    EXPECT_LT(max_abs_diff(g, gd), 1e-10);
    EXPECT_LT(max_abs_diff(g, p.gradient_fd(x, 1e-5)), 1e-7);
    EXPECT_LT(max_abs_diff(g, p.gradient_fd(x, 1e-4)), 1e-6);
}

TEST_P(VqeLandscape, FiniteDifferenceStepSelfCheck) {
    const VqeProblem p(small_config(GetParam(), 2.0));
    std::mt19937_64 rng(23);
    const auto x = testing::random_angles(p.num_parameters(), rng, 1.0);
    const auto coarse = p.gradient_fd(x, 1e-4);
    const auto fine = p.gradient_fd(x, 1e-5);
    double scale = 0.0;
    for (double g : fine) {
        scale = std::max(scale, std::abs(g));
    }
    EXPECT_LT(max_abs_diff(coarse, fine), 1e-5 * std::max(scale, 1.0));
}

TEST_P(VqeLandscape, DirectionalDerivative) {
    const VqeProblem p(small_config(GetParam(), 1.0));
    std::mt19937_64 rng(17);
    const auto x = testing::random_angles(p.num_parameters(), rng, 1.0);
    const auto d = testing::random_angles(p.num_parameters(), rng, 1.0);
    const auto g = p.gradient(x);
    double want = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        want += g[k] * d[k];
    }
    const double h = 1e-5;
    auto shifted = [&](double s) {
        auto y = x;
        for (std::size_t k = 0; k < y.size(); ++k) {
            y[k] += s * d[k];
        }
        return p.energy(y);
    };
    EXPECT_NEAR((shifted(h) - shifted(-h)) / (2 * h), want, 1e-7);
}

INSTANTIATE_TEST_SUITE_P(Ansatz, VqeLandscape,
                         ::testing::Values(AnsatzKind::AGate, AnsatzKind::HV),
                         [](const auto &info) { return to_string(info.param); });

TEST(VqeProblem, PhaseGradientVanishesAtZero) {
    const VqeProblem p(small_config(AnsatzKind::AGate, 2.0));
    const auto g = p.gradient(std::vector<double>(32, 0.0));
    for (std::size_t k = 1; k < g.size(); k += 2) {
        EXPECT_NEAR(g[k], 0.0, 1e-12) << k;
    }
}

TEST(VqeProblem, StatesStayInSector) {
    const VqeProblem p(small_config(AnsatzKind::AGate, 2.0, 2));
    std::mt19937_64 rng(19);
    const auto psi = p.state(testing::random_angles(p.num_parameters(), rng));
    EXPECT_LT(max_constraint_violation(psi, constraint_set(p.config().spec)), 1e-10);
    EXPECT_NEAR(expval(psi, number_sum(p.config().spec)), 2.0, 1e-10);
}

TEST(VqeProblem, WrongParameterCountThrows) {
    const VqeProblem p(small_config(AnsatzKind::AGate, 2.0));
    EXPECT_THROW((void)p.energy(std::vector<double>(31)), std::invalid_argument);
}

TEST(VqeConfig, Validation) {
    VqeConfig c;
    c.n_f = 3;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.n_f = 4;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.ansatz = AnsatzKind::HV;
    EXPECT_NO_THROW(c.validate());
    c.layers = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(OptimizerConfig, Validation) {
    OptimizerConfig o;
    EXPECT_NO_THROW(o.validate());
    o.learning_rate = 0.0;
    EXPECT_THROW(o.validate(), std::invalid_argument);
    o = {};
    o.beta1 = 1.0;
    EXPECT_THROW(o.validate(), std::invalid_argument);
    o = {};
    o.window = 0;
    EXPECT_THROW(o.validate(), std::invalid_argument);
}

TEST(ExactEnergy, MatchesEncodedSectorGround) {
    for (double v : {0.0, 3.0}) {
        const VqeConfig c = small_config(AnsatzKind::AGate, v);
        const auto g = ground_in_sector(tv_hamiltonian(c.spec, c.t, c.v), c.spec,
                                        constraint_set(c.spec), c.n_f);
        EXPECT_NEAR(exact_energy(c), g.energy, 1e-9);
    }
}

TEST(Run, ShortRunIsDeterministicAndMonotoneBest) {
    const VqeConfig c = small_config(AnsatzKind::AGate, 1.0);
    OptimizerConfig o;
    o.max_steps = 40;
    o.learning_rate = 0.05;
    const auto a = run(c, o);
    const auto b = run(c, o);
    ASSERT_EQ(a.energies.size(), 40u);
    EXPECT_EQ(a.energies, b.energies);
    EXPECT_EQ(a.best_params, b.best_params);
    EXPECT_TRUE(std::is_sorted(a.best_energies.rbegin(), a.best_energies.rend()));
    EXPECT_LT(a.best_energy, a.energies.front());
    EXPECT_TRUE(a.variational_bound_ok);
    EXPECT_LT(a.max_constraint_violation, 1e-10);
    EXPECT_LT(a.max_number_deviation, 1e-10);
    EXPECT_NEAR(a.relative_error, std::abs(a.best_energy - a.exact_energy) / std::abs(a.exact_energy),
                1e-15);
}

TEST(Run, SeedChangesTrajectory) {
    const VqeConfig c = small_config(AnsatzKind::HV, 1.0);
    OptimizerConfig o;
    o.max_steps = 5;
    const auto a = run(c, o);
    o.seed += 1;
    const auto b = run(c, o);
    EXPECT_NE(a.energies, b.energies);
}

TEST(Run, ZeroStepsEvaluatesStart) {
    const VqeConfig c = small_config(AnsatzKind::AGate, 1.0);
    OptimizerConfig o;
    o.max_steps = 0;
    const auto r = run(c, o);
    EXPECT_EQ(r.steps, 0);
    const VqeProblem p(c);
    EXPECT_NEAR(r.best_energy, p.energy(initial_parameters(32, o.init_scale, o.seed)), 1e-12);
}

TEST(RelativeError, FloorAtOnePpm) {
    EXPECT_EQ(floor_relative_error(5e-7), 0.0);
    EXPECT_EQ(floor_relative_error(2e-6), 2e-6);
    EXPECT_EQ(floor_relative_error(0.0), 0.0);
}

} // namespace
} // namespace f2q
