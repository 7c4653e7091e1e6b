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
 * Circuit constructions for the encoded t-V model: vacuum preparation, pair
 * creation, Trotterized evolution and the two variational ansatzes.
 */
#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "lattice.hpp"
#include "operators.hpp"

namespace f2q {

namespace detail {

inline void require_direction(const Edge &e, Direction d, const char *what) {
    if (e.direction != d) {
        throw std::invalid_argument(std::string(what) +
                                    (d == Direction::X ? " needs an x-edge" : " needs a y-edge"));
    }
}

} // namespace detail

/**
 * X gates on auxiliary qubits that fix every Wilson loop to its target on
 * |0...0>. Columns and rows needing a flip are paired along the diagonal;
 * leftover rows (columns) are flipped two at a time in column (row) 0, which
 * keeps that column's (row's) parity.
 */
[[nodiscard]] inline std::vector<Site> periodicity_sites(const LatticeSpec &spec) {
    std::vector<int> cols;
    std::vector<int> rows;
    if (column_loop_target(spec) == -1) {
        for (int x = 0; x < spec.lx(); ++x) {
            cols.push_back(x);
        }
    }
    if (row_loop_target(spec) == -1) {
        for (int y = 0; y < spec.ly(); ++y) {
            rows.push_back(y);
        }
    }
    if ((cols.size() + rows.size()) % 2 != 0) {
        throw std::domain_error("loop targets cannot be met by auxiliary X gates");
    }
    std::vector<Site> out;
    const std::size_t paired = std::min(cols.size(), rows.size());
    for (std::size_t m = 0; m < paired; ++m) {
        out.push_back({cols[m], rows[m]});
    }
    for (std::size_t m = paired; m < rows.size(); ++m) {
        out.push_back({0, rows[m]});
    }
    for (std::size_t m = paired; m < cols.size(); ++m) {
        out.push_back({cols[m], 0});
    }
    return out;
}

[[nodiscard]] inline Circuit periodicity_circuit(const LatticeSpec &spec) {
    Circuit c(spec.num_qubits());
    for (const Site &s : periodicity_sites(spec)) {
        c.add(GateKind::X, {aux(spec, s)});
    }
    return c;
}

/// Plaquette anchors in the order the vacuum blocks are emitted.
[[nodiscard]] inline std::vector<Site> vacuum_block_order(const LatticeSpec &spec) {
    std::vector<Site> out = vacuum_plaquette_set(spec);
    // Within a row, right to left: the control aux(r+y) of block r is a target
    // (as r+x+y) of block r-x, so block r must come first.
    std::stable_sort(out.begin(), out.end(), [](const Site &a, const Site &b) {
        return a.ry != b.ry ? a.ry < b.ry : a.rx > b.rx;
    });
    return out;
}

/**
 * Vacuum preparation V_G V_P. Each block is H on aux(r+y) followed by
 * controlled Y, X, Y from aux(r+y) onto aux(r), aux(r+x), aux(r+x+y). X gates
 * of V_P that land on a block's control qubit are applied right after that
 * block; all others are applied first.
 */
[[nodiscard]] inline Circuit vacuum_circuit(const LatticeSpec &spec) {
    const auto order = vacuum_block_order(spec);
    std::set<int> controls;
    for (const Site &r : order) {
        controls.insert(aux(spec, spec.shift(r, 0, 1)));
    }
    Circuit c(spec.num_qubits());
    std::set<int> deferred;
    for (const Site &s : periodicity_sites(spec)) {
        const int q = aux(spec, s);
        if (controls.count(q) != 0) {
            deferred.insert(q);
        } else {
            c.add(GateKind::X, {q});
        }
    }
    for (const Site &r : order) {
        const auto [a, b, cc, d] = plaquette_sites(spec, r);
        const int ctrl = aux(spec, d);
        c.add(GateKind::H, {ctrl});
        c.add(GateKind::CY, {ctrl, aux(spec, a)});
        c.add(GateKind::CNOT, {ctrl, aux(spec, b)});
        c.add(GateKind::CY, {ctrl, aux(spec, cc)});
        if (deferred.count(ctrl) != 0) {
            c.add(GateKind::X, {ctrl});
        }
    }
    return c;
}

/**
 * Creates fermions on both ends of an edge (both must be empty).
 * x-edge: X phys(r), X phys(r+x), Z aux(r+x).
 * y-edge: X phys(r), X phys(r+y), Y aux(r), X aux(r+y).
 */
[[nodiscard]] inline Circuit pair_creation(const LatticeSpec &spec, const Edge &e) {
    const Site r = spec.wrap(e.origin);
    const Site s = edge_target(spec, e);
    Circuit c(spec.num_qubits());
    c.add(GateKind::X, {phys(spec, r)});
    c.add(GateKind::X, {phys(spec, s)});
    if (e.direction == Direction::X) {
        c.add(GateKind::Z, {aux(spec, s)});
    } else {
        c.add(GateKind::Y, {aux(spec, r)});
        c.add(GateKind::X, {aux(spec, s)});
    }
    return c;
}

/// W = CNOT(b->a) CH(a->b) CNOT(b->a). W is self-inverse and W (Z_b - Z_a) W = XX + YY.
inline void append_w(Circuit &c, int a, int b) {
    c.add(GateKind::CNOT, {b, a});
    c.add(GateKind::CH, {a, b});
    c.add(GateKind::CNOT, {b, a});
}

[[nodiscard]] inline Circuit w_circuit(int n_qubits, int a, int b) {
    Circuit c(n_qubits);
    append_w(c, a, b);
    return c;
}

[[nodiscard]] inline Circuit w_circuit(const LatticeSpec &spec, QubitRef a, QubitRef b) {
    return w_circuit(spec.num_qubits(), qubit_index(spec, a), qubit_index(spec, b));
}

namespace detail {

/// Appends an RZ whose angle is value (unbound) or scale * params[slot].
inline void add_rz(Circuit &c, int q, double value, ParamSlot slot) {
    if (slot.slot >= 0) {
        c.add(GateKind::RZ, {q}, {value}, {slot});
    } else {
        c.add(GateKind::RZ, {q}, {value});
    }
}

inline void hop_x_into(Circuit &c, const LatticeSpec &spec, const Edge &e, double theta,
                       int slot) {
    require_direction(e, Direction::X, "hop_x_evolution");
    const int a = phys(spec, e.origin);
    const int b = phys(spec, edge_target(spec, e));
    const int z = aux(spec, edge_target(spec, e));
    append_w(c, a, b);
    // exp(-i th Z_a Z_z) and exp(i th Z_b Z_z), each as CNOT RZ CNOT.
    c.add(GateKind::CNOT, {a, z});
    add_rz(c, z, 2 * theta, {slot, 2.0});
    c.add(GateKind::CNOT, {a, z});
    c.add(GateKind::CNOT, {b, z});
    add_rz(c, z, -2 * theta, {slot, -2.0});
    c.add(GateKind::CNOT, {b, z});
    append_w(c, a, b);
}

inline void hop_y_into(Circuit &c, const LatticeSpec &spec, const Edge &e, double theta,
                       int slot) {
    require_direction(e, Direction::Y, "hop_y_evolution");
    constexpr double half_pi = gates::kPi / 2;
    const Site r = spec.wrap(e.origin);
    const Site s = edge_target(spec, e);
    const int a = phys(spec, r);
    const int b = phys(spec, s);
    const int u = aux(spec, r);
    const int v = aux(spec, s);
    // Sdg on a then W turn -XY+YX into Z_b - Z_a; the auxiliary rotations turn
    // Y (x) X into Z (x) Z. The core exp(i th (Z_b - Z_a) Z_u Z_v) shares the
    // u->v parity CNOT between both factors.
    c.add(GateKind::Sdg, {a});
    append_w(c, a, b);
    c.add(GateKind::RX, {u}, {-half_pi});
    c.add(GateKind::RY, {v}, {half_pi});
    c.add(GateKind::CNOT, {u, v});
    c.add(GateKind::CNOT, {a, v});
    add_rz(c, v, 2 * theta, {slot, 2.0});
    c.add(GateKind::CNOT, {a, v});
    c.add(GateKind::CNOT, {b, v});
    add_rz(c, v, -2 * theta, {slot, -2.0});
    c.add(GateKind::CNOT, {b, v});
    c.add(GateKind::CNOT, {u, v});
    c.add(GateKind::RY, {v}, {-half_pi});
    c.add(GateKind::RX, {u}, {half_pi});
    append_w(c, a, b);
    c.add(GateKind::S, {a});
}

inline void interaction_into(Circuit &c, const LatticeSpec &spec, const Edge &e,
                             double lambda, int slot) {
    const int a = phys(spec, e.origin);
    const int b = phys(spec, edge_target(spec, e));
    if (slot >= 0) {
        c.add(GateKind::CPHASE, {a, b}, {-lambda}, {{slot, -1.0}});
    } else {
        c.add(GateKind::CPHASE, {a, b}, {-lambda});
    }
}

} // namespace detail

/// exp(+i theta (XX + YY)_phys Z2_{r+x}) up to a global phase.
[[nodiscard]] inline Circuit hop_x_evolution(const LatticeSpec &spec, const Edge &e,
                                             double theta) {
    Circuit c(spec.num_qubits());
    detail::hop_x_into(c, spec, e, theta, -1);
    return c;
}

/// exp(+i theta (-XY + YX)_phys Y2_r X2_{r+y}) up to a global phase.
[[nodiscard]] inline Circuit hop_y_evolution(const LatticeSpec &spec, const Edge &e,
                                             double theta) {
    Circuit c(spec.num_qubits());
    detail::hop_y_into(c, spec, e, theta, -1);
    return c;
}

/**
 * exp(-i theta Z_z Y_y X_x): RX and RY move Y_y and X_x to Z, a CNOT parity
 * ladder onto x feeds one RZ(2 theta). This is the single-factor core of
 * hop_y_evolution.
 */
[[nodiscard]] inline Circuit zyx_evolution(int n_qubits, int z, int y, int x, double theta) {
    constexpr double half_pi = gates::kPi / 2;
    Circuit c(n_qubits);
    c.add(GateKind::RX, {y}, {-half_pi});
    c.add(GateKind::RY, {x}, {half_pi});
    c.add(GateKind::CNOT, {y, x});
    c.add(GateKind::CNOT, {z, x});
    c.add(GateKind::RZ, {x}, {2 * theta});
    c.add(GateKind::CNOT, {z, x});
    c.add(GateKind::CNOT, {y, x});
    c.add(GateKind::RY, {x}, {-half_pi});
    c.add(GateKind::RX, {y}, {half_pi});
    return c;
}

/// exp(-i lambda n_r n_r') exactly: CPHASE(-lambda) on the physical pair.
[[nodiscard]] inline Circuit interaction_evolution(const LatticeSpec &spec, const Edge &e,
                                                   double lambda) {
    Circuit c(spec.num_qubits());
    detail::interaction_into(c, spec, e, lambda, -1);
    return c;
}

/**
 * Edges of one direction split into slices of pairwise disjoint edges: even
 * columns (rows) first, then odd ones. On odd extents the wrapping edge gets
 * a slice of its own.
 */
[[nodiscard]] inline std::vector<std::vector<Edge>> edge_slices(const LatticeSpec &spec,
                                                                Direction d) {
    const int extent = d == Direction::X ? spec.lx() : spec.ly();
    std::vector<std::vector<Edge>> out(extent % 2 == 0 ? 2 : 3);
    for (const Edge &e : edges(spec, d)) {
        const int k = d == Direction::X ? e.origin.rx : e.origin.ry;
        const std::size_t slice =
            (extent % 2 == 1 && k == extent - 1) ? 2 : static_cast<std::size_t>(k % 2);
        out[slice].push_back(e);
    }
    return out;
}

/// Edges in Trotter order: x slices then y slices.
[[nodiscard]] inline std::vector<Edge> sliced_edges(const LatticeSpec &spec, Direction d) {
    std::vector<Edge> out;
    for (const auto &slice : edge_slices(spec, d)) {
        out.insert(out.end(), slice.begin(), slice.end());
    }
    return out;
}

/**
 * One first-order step exp(-i H_C dt) exp(-i H_x dt) exp(-i H_y dt), applied
 * in that time order. Hopping angles are rho t dt / 2 (x) and t dt / 2 (y).
 */
[[nodiscard]] inline Circuit trotter_step(const LatticeSpec &spec, double t, double v,
                                          double dt) {
    Circuit c(spec.num_qubits());
    for (Direction d : {Direction::X, Direction::Y}) {
        for (const Edge &e : sliced_edges(spec, d)) {
            detail::interaction_into(c, spec, e, v * dt, -1);
            c.end_block();
        }
    }
    for (const Edge &e : sliced_edges(spec, Direction::X)) {
        detail::hop_x_into(c, spec, e, spec.rho() * t * dt / 2, -1);
        c.end_block();
    }
    for (const Edge &e : sliced_edges(spec, Direction::Y)) {
        detail::hop_y_into(c, spec, e, t * dt / 2, -1);
        c.end_block();
    }
    return c;
}

/// exp(-i H t) approximated by `steps` repetitions of trotter_step.
[[nodiscard]] inline Circuit trotter_circuit(const LatticeSpec &spec, double t, double v,
                                             double dt, int steps) {
    Circuit one = trotter_step(spec, t, v, dt);
    Circuit c(spec.num_qubits());
    for (int k = 0; k < steps; ++k) {
        c.append(one);
    }
    return c;
}

[[nodiscard]] inline Matrix vx_unitary(double theta, double phi) {
    return gates::vx_matrix(theta, phi);
}

[[nodiscard]] inline Matrix vy_unitary(double theta, double phi) {
    return gates::vy_matrix(theta, phi);
}

/// Native two-qubit counts of the decompositions in vx_native / vy_native.
inline constexpr int kVxNativeCost = 5;
inline constexpr int kVyNativeCost = 7;

/// Variational x-hop gate on (phys r, phys r+x, aux r+x); slots bind (theta, phi).
[[nodiscard]] inline Gate vx_gate(const LatticeSpec &spec, const Edge &e, int theta_slot,
                                  int phi_slot, double theta = 0.0, double phi = 0.0) {
    detail::require_direction(e, Direction::X, "vx_gate");
    const Site s = edge_target(spec, e);
    Gate g;
    g.kind = GateKind::MATRIX;
    g.family = MatrixFamily::VX;
    g.targets = {phys(spec, e.origin), phys(spec, s), aux(spec, s)};
    g.params = {theta, phi};
    g.slots = {{theta_slot, 1.0}, {phi_slot, 1.0}};
    g.label = "vx";
    g.declared_cost = kVxNativeCost;
    return g;
}

/// Variational y-hop gate on (phys r, phys r+y, aux r, aux r+y).
[[nodiscard]] inline Gate vy_gate(const LatticeSpec &spec, const Edge &e, int theta_slot,
                                  int phi_slot, double theta = 0.0, double phi = 0.0) {
    detail::require_direction(e, Direction::Y, "vy_gate");
    const Site r = spec.wrap(e.origin);
    const Site s = edge_target(spec, e);
    Gate g;
    g.kind = GateKind::MATRIX;
    g.family = MatrixFamily::VY;
    g.targets = {phys(spec, r), phys(spec, s), aux(spec, r), aux(spec, s)};
    g.params = {theta, phi};
    g.slots = {{theta_slot, 1.0}, {phi_slot, 1.0}};
    g.label = "vy";
    g.declared_cost = kVyNativeCost;
    return g;
}

/**
 * The two-qubit number-conserving rotation A(theta, phi) on (a, b) from three
 * CNOTs: CNOT(b->a), R^dag on b, CNOT(a->b), R on b, CNOT(b->a), with
 * R = RZ(phi + pi) RY(theta + pi/2). In the |ab> basis it equals
 * [[1,0,0,0],[0,c,e^{i phi}s,0],[0,e^{-i phi}s,-c,0],[0,0,0,1]].
 */
inline void append_a_gate(Circuit &c, int a, int b, double theta, double phi) {
    constexpr double pi = gates::kPi;
    c.add(GateKind::CNOT, {b, a});
    c.add(GateKind::RZ, {b}, {-(phi + pi)});
    c.add(GateKind::RY, {b}, {-(theta + pi / 2)});
    c.add(GateKind::CNOT, {a, b});
    c.add(GateKind::RY, {b}, {theta + pi / 2});
    c.add(GateKind::RZ, {b}, {phi + pi});
    c.add(GateKind::CNOT, {b, a});
}

/// vx from native gates: CZ(a, aux) A(theta, phi) CZ(a, aux).
[[nodiscard]] inline Circuit vx_native(const LatticeSpec &spec, const Edge &e, double theta,
                                       double phi) {
    detail::require_direction(e, Direction::X, "vx_native");
    const Site s = edge_target(spec, e);
    const int a = phys(spec, e.origin);
    const int z = aux(spec, s);
    Circuit c(spec.num_qubits());
    c.add(GateKind::CZ, {a, z});
    append_a_gate(c, a, phys(spec, s), theta, phi);
    c.add(GateKind::CZ, {a, z});
    return c;
}

/// vy from native gates: C A(theta, phi - pi/2) C with C = CY(a->aux r) CX(a->aux r+y).
[[nodiscard]] inline Circuit vy_native(const LatticeSpec &spec, const Edge &e, double theta,
                                       double phi) {
    detail::require_direction(e, Direction::Y, "vy_native");
    const Site r = spec.wrap(e.origin);
    const Site s = edge_target(spec, e);
    const int a = phys(spec, r);
    Circuit c(spec.num_qubits());
    c.add(GateKind::CY, {a, aux(spec, r)});
    c.add(GateKind::CNOT, {a, aux(spec, s)});
    append_a_gate(c, a, phys(spec, s), theta, phi - gates::kPi / 2);
    c.add(GateKind::CNOT, {a, aux(spec, s)});
    c.add(GateKind::CY, {a, aux(spec, r)});
    return c;
}

/// Parameters of the A-gate ansatz: (theta, phi) per edge per layer.
[[nodiscard]] inline int agate_parameter_count(const LatticeSpec &spec, int layers) {
    return layers * 2 * static_cast<int>(edges(spec).size());
}

/**
 * Per layer: vy on every y-edge, then vx on every x-edge (row-major), each
 * with its own (theta, phi) slots.
 */
[[nodiscard]] inline Circuit ansatz_agate(const LatticeSpec &spec, int layers,
                                          const std::vector<double> &params) {
    if (layers < 0) {
        throw std::invalid_argument("negative layer count");
    }
    const int np = agate_parameter_count(spec, layers);
    if (static_cast<int>(params.size()) != np) {
        throw std::invalid_argument("agate ansatz expects " + std::to_string(np) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    Circuit c(spec.num_qubits());
    c.set_num_parameters(np);
    int slot = 0;
    for (int l = 0; l < layers; ++l) {
        for (const Edge &e : edges(spec, Direction::Y)) {
            c.add(vy_gate(spec, e, slot, slot + 1));
            c.end_block();
            slot += 2;
        }
        for (const Edge &e : edges(spec, Direction::X)) {
            c.add(vx_gate(spec, e, slot, slot + 1));
            c.end_block();
            slot += 2;
        }
    }
    c.bind(params);
    return c;
}

enum class HvGranularity { PerGroup, PerEdge };

/// per_group: 3 per layer; per_edge: 2 |edges| per layer (interaction + hop angle per edge).
[[nodiscard]] inline int hv_parameter_count(const LatticeSpec &spec, int layers,
                                            HvGranularity g) {
    return g == HvGranularity::PerGroup
               ? 3 * layers
               : layers * 2 * static_cast<int>(edges(spec).size());
}

/**
 * Hamiltonian-variational layers in trotter_step structure with free angles.
 * per_group slots per layer: (lambda_C, theta_x, theta_y). per_edge slots per
 * layer: one interaction angle per edge, then one hop angle per edge, both in
 * edges() order.
 */
[[nodiscard]] inline Circuit ansatz_hv(const LatticeSpec &spec, int layers,
                                       const std::vector<double> &params,
                                       HvGranularity granularity) {
    if (layers < 0) {
        throw std::invalid_argument("negative layer count");
    }
    const int np = hv_parameter_count(spec, layers, granularity);
    if (static_cast<int>(params.size()) != np) {
        throw std::invalid_argument("hv ansatz expects " + std::to_string(np) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    const auto all = edges(spec);
    const int ne = static_cast<int>(all.size());
    auto edge_id = [&](const Edge &e) {
        return static_cast<int>(std::find(all.begin(), all.end(), e) - all.begin());
    };
    Circuit c(spec.num_qubits());
    c.set_num_parameters(np);
    for (int l = 0; l < layers; ++l) {
        auto slot_c = [&](const Edge &e) {
            return granularity == HvGranularity::PerGroup ? 3 * l : 2 * ne * l + edge_id(e);
        };
        auto slot_h = [&](const Edge &e) {
            if (granularity == HvGranularity::PerGroup) {
                return 3 * l + (e.direction == Direction::X ? 1 : 2);
            }
            return 2 * ne * l + ne + edge_id(e);
        };
        for (Direction d : {Direction::X, Direction::Y}) {
            for (const Edge &e : sliced_edges(spec, d)) {
                detail::interaction_into(c, spec, e, 0.0, slot_c(e));
                c.end_block();
            }
        }
        for (const Edge &e : sliced_edges(spec, Direction::X)) {
            detail::hop_x_into(c, spec, e, 0.0, slot_h(e));
            c.end_block();
        }
        for (const Edge &e : sliced_edges(spec, Direction::Y)) {
            detail::hop_y_into(c, spec, e, 0.0, slot_h(e));
            c.end_block();
        }
    }
    c.bind(params);
    return c;
}

/// Replaces vx/vy matrix gates by their native decompositions.
[[nodiscard]] inline Circuit expand_native(const LatticeSpec &spec, const Circuit &c) {
    Circuit out(c.num_qubits());
    for (const Gate &g : c.gates()) {
        if (g.kind == GateKind::MATRIX && g.family != MatrixFamily::Fixed) {
            const Site r = spec.site_at(g.targets[0]);
            const Edge e{r, g.family == MatrixFamily::VX ? Direction::X : Direction::Y};
            out.append(g.family == MatrixFamily::VX ? vx_native(spec, e, g.params[0], g.params[1])
                                                    : vy_native(spec, e, g.params[0], g.params[1]));
        } else {
            Gate copy = g;
            copy.slots.clear();
            out.add(std::move(copy));
        }
    }
    return out;
}

} // namespace f2q
