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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include <f2q/cli.hpp>

namespace f2q {
namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "f2q");
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

int count_with(const std::string &s, const std::string &needle) {
    int n = 0;
    for (const auto &l : lines(s)) {
        n += l.find(needle) != std::string::npos ? 1 : 0;
    }
    return n;
}

std::filesystem::path temp_file(const std::string &name, const std::string &body) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p;
}

TEST(CheckConstraints, FourByFourAllPass) {
    const auto r = invoke({"check-constraints", "--lx", "4", "--ly", "4"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_EQ(count_with(r.out, " PASS"), 24);
    EXPECT_EQ(count_with(r.out, " FAIL"), 0);
    EXPECT_NE(r.out.find("col0"), std::string::npos);
}

TEST(CheckConstraints, OddLatticeWithPairs) {
    const auto r = invoke({"check-constraints", "--lx", "3", "--ly", "3", "--pair", "0,0,x",
                           "--pair", "1,2,y"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_EQ(count_with(r.out, " PASS"), 9 + 3 + 3);
}

TEST(CheckConstraints, MixedParityIsUsageError) {
    EXPECT_EQ(invoke({"check-constraints", "--lx", "3", "--ly", "4"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"check-constraints", "--pair", "0,0,z"}).code, cli::kUsage);
}

TEST(Quench, ShortTrajectoryCsv) {
    const auto r = invoke({"quench", "--tmax", "0.2", "--dt", "0.1"});
    ASSERT_EQ(r.code, cli::kPass) << r.err;
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 1u + 3u * 8u);
    EXPECT_EQ(rows[0], "time,rx,ry,occ_trotter,occ_exact_encoded,occ_exact_fermionic");
    double sum = 0.0;
    for (std::size_t i = 1; i <= 8; ++i) {
        std::stringstream ss(rows[i]);
        std::vector<double> v;
        for (std::string cell; std::getline(ss, cell, ',');) {
            v.push_back(std::stod(cell));
        }
        ASSERT_EQ(v.size(), 6u);
        EXPECT_EQ(v[0], 0.0);
        EXPECT_NEAR(v[3], v[5], 1e-8);
        EXPECT_NEAR(v[4], v[5], 1e-8);
        sum += v[3];
    }
    EXPECT_NEAR(sum, 2.0, 1e-10);
    EXPECT_NE(r.err.find("sector PP"), std::string::npos);
}

TEST(Quench, NonIntegerStepCountIsUsageError) {
    EXPECT_EQ(invoke({"quench", "--dt", "0.3", "--tmax", "1"}).code, cli::kUsage);
}

TEST(Vqe, JsonDocumentAndDeterminism) {
    const std::vector<std::string> args = {"vqe", "--layers", "1", "--max-steps", "15", "--v", "2"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, cli::kPass) << a.err;
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    EXPECT_TRUE(ja.contains("relative_error"));
    EXPECT_EQ(ja["trace"].size(), 15u);
    EXPECT_EQ(ja["trace"], jb["trace"]);
    EXPECT_EQ(ja["config"]["vqe"]["pairs"][0], "0,0,x");
    EXPECT_LE(ja["exact_energy"].get<double>(), ja["best_energy"].get<double>() + 1e-9);
}

TEST(Vqe, BadAnsatzIsUsageError) {
    EXPECT_EQ(invoke({"vqe", "--ansatz", "qaoa"}).code, cli::kUsage);
}

TEST(DepthReport, ColumnsAndConstantDepth) {
    const auto r = invoke({"depth-report", "--sizes", "4", "6"});
    ASSERT_EQ(r.code, cli::kPass) << r.err;
    const auto rows = lines(r.out);
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[0].rfind("L,trotter_two_qubit_depth,total_gates", 0), 0u);
    const auto depth = [](const std::string &row) {
        std::stringstream ss(row);
        std::string l, d;
        std::getline(ss, l, ',');
        std::getline(ss, d, ',');
        return d;
    };
    EXPECT_EQ(depth(rows[1]), depth(rows[2]));
}

TEST(ExportCircuit, VacuumTwoByTwo) {
    const auto r = invoke({"export-circuit", "--kind", "vacuum"});
    ASSERT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_EQ(lines(r.out)[0], "qubits 8");
    EXPECT_EQ(count_with(r.out, "cnot ") + count_with(r.out, "cy "), 3);
    const Circuit back = parse_circuit(r.out);
    const LatticeSpec spec = LatticeSpec::make(2, 2);
    auto s = zero_state(8);
    apply_circuit(s, back);
    EXPECT_LT(max_constraint_violation(s, constraint_set(spec)), 1e-10);
}

TEST(ExportCircuit, TrotterAndNativeAnsatz) {
    const auto t = invoke({"export-circuit", "--kind", "trotter", "--steps", "2"});
    ASSERT_EQ(t.code, cli::kPass) << t.err;
    const auto spec = LatticeSpec::make(2, 2);
    EXPECT_EQ(parse_circuit(t.out).size(), 2 * trotter_step(spec, 1.0, 0.0, 0.1).size());

    const auto a = invoke({"export-circuit", "--kind", "ansatz", "--layers", "1", "--native"});
    ASSERT_EQ(a.code, cli::kPass) << a.err;
    EXPECT_EQ(count_with(a.out, "vx "), 0);
    EXPECT_EQ(count_with(a.out, "vy "), 0);
}

TEST(SpectrumMatch, TwoByTwoMatches) {
    const auto r = invoke({"spectrum-match", "--v", "2"});
    EXPECT_EQ(r.code, cli::kPass) << r.out << r.err;
    EXPECT_NE(r.out.find("PASS matched"), std::string::npos);
}

TEST(SpectrumMatch, FlippedParityFactorHasNoEvenSector) {
    const auto r = invoke({"spectrum-match", "--lx", "3", "--ly", "3", "--rho", "1"});
    EXPECT_EQ(r.code, cli::kFailure);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
    // Odd fermion numbers are the ones present for this parity factor.
    EXPECT_EQ(invoke({"spectrum-match", "--lx", "3", "--ly", "3", "--rho", "1", "--nf", "3"}).code,
              cli::kPass);
}

TEST(Config, IniValuesAndCommandLineOverride) {
    const auto ini = temp_file("f2q_cli_test.ini", "[lattice]\nlx = 4\nly = 4\n");
    const auto r = invoke({"--config", ini.string(), "check-constraints"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_EQ(count_with(r.out, " PASS"), 24);
    const auto o = invoke({"--config", ini.string(), "check-constraints", "--lx", "2", "--ly", "2"});
    EXPECT_EQ(o.code, cli::kPass) << o.err;
    EXPECT_EQ(count_with(o.out, " PASS"), 4 + 2 + 2);
}

TEST(Config, UnknownOrInapplicableKey) {
    const auto bad = temp_file("f2q_cli_bad.ini", "[lattice]\nwidth = 4\n");
    EXPECT_EQ(invoke({"--config", bad.string(), "check-constraints"}).code, cli::kUsage);
    const auto other = temp_file("f2q_cli_other.ini", "[trotter]\ndt = 0.1\n");
    EXPECT_EQ(invoke({"--config", other.string(), "check-constraints"}).code, cli::kUsage);
    EXPECT_EQ(invoke({"--config", "/nonexistent/f2q.ini", "vqe"}).code, cli::kUsage);
}

TEST(Usage, HelpAndUnknownCommand) {
    EXPECT_EQ(invoke({"--help"}).code, cli::kPass);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(invoke({}).code, cli::kUsage);
}

TEST(DepthFit, QuadraticCoefficient) {
    const auto rows = cli::depth_rows({4, 6, 8});
    ASSERT_EQ(rows.size(), 3u);
    const auto fit = cli::fit_quadratic(rows);
    EXPECT_LT(fit.max_relative_residual, 0.05);
    EXPECT_NEAR(fit.coefficient, 34.0, 1.0);
}

} // namespace
} // namespace f2q
