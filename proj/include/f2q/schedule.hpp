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
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "circuit.hpp"

namespace f2q {

struct DepthReport {
    int two_qubit_depth = 0;            ///< ASAP depth over gates on >= 2 qubits
    std::map<int, int> counts_by_arity; ///< arity -> number of gates
    int total_gates = 0;
    int multi_qubit_gates = 0;
    int parameterized_gates = 0;
    int declared_two_qubit_cost = 0;    ///< multi-qubit gates, with declared costs for matrix gates
};

/// ASAP schedule in which single-qubit gates are free.
[[nodiscard]] inline DepthReport schedule(const Circuit &c) {
    DepthReport r;
    std::vector<int> level(static_cast<std::size_t>(c.num_qubits()), 0);
    for (const Gate &g : c.gates()) {
        const int k = static_cast<int>(g.targets.size());
        ++r.counts_by_arity[k];
        ++r.total_gates;
        if (!g.params.empty() && (!g.slots.empty() || g.family != MatrixFamily::Fixed)) {
            ++r.parameterized_gates;
        }
        if (k < 2) {
            continue;
        }
        ++r.multi_qubit_gates;
        r.declared_two_qubit_cost += g.declared_cost > 0 ? g.declared_cost : 1;
        int start = 0;
        for (int q : g.targets) {
            start = std::max(start, level[static_cast<std::size_t>(q)]);
        }
        for (int q : g.targets) {
            level[static_cast<std::size_t>(q)] = start + 1;
        }
        r.two_qubit_depth = std::max(r.two_qubit_depth, start + 1);
    }
    return r;
}

} // namespace f2q
