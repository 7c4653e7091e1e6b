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
 * Line-oriented circuit text format.
 *
 *     qubits <n>
 *     <kind> q<i> [q<j> ...] [angle ...]
 *     vx q<a> q<b> q<c> <theta> <phi>
 *     vy q<a> q<b> q<c> q<d> <theta> <phi>
 *     matrix q<i> [q<j> ...]
 *     <re> <im> ... (one line per matrix row, 2^k complex entries)
 *
 * Angles are written with 12 decimals; lines starting with '#' are comments.
 */
#pragma once

#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "constructions.hpp"

namespace f2q {

namespace detail {

inline std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", a);
    return buf;
}

inline const std::map<std::string, GateKind> &kind_table() {
    static const std::map<std::string, GateKind> table = [] {
        std::map<std::string, GateKind> t;
        for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S,
                           GateKind::Sdg, GateKind::RX, GateKind::RY, GateKind::RZ,
                           GateKind::CNOT, GateKind::CY, GateKind::CZ, GateKind::CH,
                           GateKind::CCZ, GateKind::CPHASE}) {
            t[kind_name(k)] = k;
        }
        return t;
    }();
    return table;
}

} // namespace detail

[[nodiscard]] inline std::string export_text(const Circuit &c) {
    std::ostringstream os;
    os << "qubits " << c.num_qubits() << '\n';
    for (const Gate &g : c.gates()) {
        std::string name = kind_name(g.kind);
        if (g.kind == GateKind::MATRIX && g.family == MatrixFamily::VX) {
            name = "vx";
        } else if (g.kind == GateKind::MATRIX && g.family == MatrixFamily::VY) {
            name = "vy";
        }
        os << name;
        for (int q : g.targets) {
            os << " q" << q;
        }
        for (double p : g.params) {
            os << ' ' << detail::format_angle(p);
        }
        os << '\n';
        if (g.kind == GateKind::MATRIX && g.family == MatrixFamily::Fixed) {
            os << std::setprecision(17);
            for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
                for (Eigen::Index col = 0; col < g.matrix.cols(); ++col) {
                    os << (col ? " " : "") << g.matrix(r, col).real() << ' '
                       << g.matrix(r, col).imag();
                }
                os << '\n';
            }
        }
    }
    return os.str();
}

[[nodiscard]] inline Circuit parse_circuit(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    auto fail = [&line_no](const std::string &msg) {
        throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + msg);
    };
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            const auto p = line.find_first_not_of(" \t\r");
            if (p != std::string::npos && line[p] != '#') {
                return true;
            }
        }
        return false;
    };
    if (!next_line()) {
        fail("missing header");
    }
    int n = 0;
    {
        std::istringstream hs(line);
        std::string word;
        if (!(hs >> word >> n) || word != "qubits" || n <= 0) {
            fail("expected 'qubits <n>'");
        }
    }
    Circuit c(n);
    while (next_line()) {
        std::istringstream ls(line);
        std::string name;
        ls >> name;
        std::vector<int> targets;
        std::vector<double> params;
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == 'q') {
                if (!params.empty()) {
                    fail("qubit after angle");
                }
                try {
                    targets.push_back(std::stoi(tok.substr(1)));
                } catch (const std::exception &) {
                    fail("bad qubit token '" + tok + "'");
                }
            } else {
                try {
                    params.push_back(std::stod(tok));
                } catch (const std::exception &) {
                    fail("bad angle token '" + tok + "'");
                }
            }
        }
        Gate g;
        g.targets = targets;
        g.params = params;
        try {
            if (name == "vx" || name == "vy") {
                g.kind = GateKind::MATRIX;
                g.family = name == "vx" ? MatrixFamily::VX : MatrixFamily::VY;
                g.label = name;
                g.declared_cost = name == "vx" ? kVxNativeCost : kVyNativeCost;
            } else if (name == "matrix") {
                g.kind = GateKind::MATRIX;
                const auto dim = Eigen::Index{1} << targets.size();
                g.matrix = Matrix(dim, dim);
                for (Eigen::Index r = 0; r < dim; ++r) {
                    if (!next_line()) {
                        fail("truncated matrix block");
                    }
                    std::istringstream rs(line);
                    for (Eigen::Index col = 0; col < dim; ++col) {
                        double re = 0;
                        double im = 0;
                        if (!(rs >> re >> im)) {
                            fail("short matrix row");
                        }
                        g.matrix(r, col) = {re, im};
                    }
                }
            } else {
                auto it = detail::kind_table().find(name);
                if (it == detail::kind_table().end()) {
                    fail("unknown gate '" + name + "'");
                }
                g.kind = it->second;
            }
            c.add(std::move(g));
        } catch (const std::invalid_argument &e) {
            const std::string what = e.what();
            if (what.rfind("circuit text", 0) == 0) {
                throw;
            }
            fail(what);
        } catch (const std::out_of_range &e) {
            fail(e.what());
        }
    }
    return c;
}

} // namespace f2q
