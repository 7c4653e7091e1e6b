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
 * Qubit operators of the bosonized spinless-fermion model: Gauss and
 * plaquette strings, Wilson-loop constraints, hopping/interaction terms, the
 * t-V Hamiltonian and the fermion number.
 */
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "pauli.hpp"

namespace f2q {

/// G_r = [Z1 Y2]_r [X2]_{r+x} [Y2]_{r+x+y} [Z1 X2]_{r+y}
[[nodiscard]] inline PauliString gauss_string(const LatticeSpec &spec, Site r) {
    const auto [a, b, c, d] = plaquette_sites(spec, r);
    PauliString s(static_cast<std::size_t>(spec.num_qubits()));
    s.mul_at(phys(spec, a), Pauli::Z).mul_at(aux(spec, a), Pauli::Y);
    s.mul_at(aux(spec, b), Pauli::X);
    s.mul_at(aux(spec, c), Pauli::Y);
    s.mul_at(phys(spec, d), Pauli::Z).mul_at(aux(spec, d), Pauli::X);
    return s;
}

/// Wen plaquette C_r = Y2_r X2_{r+x} Y2_{r+x+y} X2_{r+y}
[[nodiscard]] inline PauliString plaquette_string(const LatticeSpec &spec,
                                                  Site r) {
    const auto [a, b, c, d] = plaquette_sites(spec, r);
    PauliString s(static_cast<std::size_t>(spec.num_qubits()));
    s.mul_at(aux(spec, a), Pauli::Y);
    s.mul_at(aux(spec, b), Pauli::X);
    s.mul_at(aux(spec, c), Pauli::Y);
    s.mul_at(aux(spec, d), Pauli::X);
    return s;
}

struct Stabilizer {
    PauliString string;
    int target = 1; ///< required eigenvalue, +1 or -1
    std::string label;
};

/// Mutually commuting stabilizers with their required eigenvalues.
struct ConstraintSet {
    std::vector<Stabilizer> stabilizers;

    [[nodiscard]] std::size_t size() const { return stabilizers.size(); }
    [[nodiscard]] std::size_t num_qubits() const {
        return stabilizers.empty() ? 0 : stabilizers.front().string.size();
    }
};

/// Column loop along y at column rx: bare product of Z2.
[[nodiscard]] inline PauliString column_loop_string(const LatticeSpec &spec,
                                                    int rx) {
    PauliString s(static_cast<std::size_t>(spec.num_qubits()));
    for (int m = 0; m < spec.ly(); ++m) {
        s.mul_at(aux(spec, {rx, m}), Pauli::Z);
    }
    return s;
}

/// Row loop along x at row ry: bare product of Z1 Z2.
[[nodiscard]] inline PauliString row_loop_string(const LatticeSpec &spec,
                                                 int ry) {
    PauliString s(static_cast<std::size_t>(spec.num_qubits()));
    for (int m = 0; m < spec.lx(); ++m) {
        s.mul_at(phys(spec, {m, ry}), Pauli::Z);
        s.mul_at(aux(spec, {m, ry}), Pauli::Z);
    }
    return s;
}

/// Required eigenvalue of the bare column-loop string: -(-1)^Ly.
[[nodiscard]] inline int column_loop_target(const LatticeSpec &spec) {
    return spec.ly() % 2 == 0 ? -1 : 1;
}

/// Required eigenvalue of the bare row-loop string: -rho^Lx.
[[nodiscard]] inline int row_loop_target(const LatticeSpec &spec) {
    const int rho_pow = (spec.rho() == -1 && spec.lx() % 2 == 1) ? -1 : 1;
    return -rho_pow;
}

/**
 * All N Gauss strings (target +1), then the Lx column loops, then the Ly row
 * loops. Loop prefactors are folded into the stored targets.
 */
[[nodiscard]] inline ConstraintSet constraint_set(const LatticeSpec &spec) {
    ConstraintSet cs;
    for (int i = 0; i < spec.num_sites(); ++i) {
        const Site r = spec.site_at(i);
        cs.stabilizers.push_back({gauss_string(spec, r), 1, "G" + to_string(r)});
    }
    for (int rx = 0; rx < spec.lx(); ++rx) {
        cs.stabilizers.push_back({column_loop_string(spec, rx),
                                  column_loop_target(spec),
                                  "col" + std::to_string(rx)});
    }
    for (int ry = 0; ry < spec.ly(); ++ry) {
        cs.stabilizers.push_back({row_loop_string(spec, ry),
                                  row_loop_target(spec),
                                  "row" + std::to_string(ry)});
    }
    return cs;
}

/**
 * Bosonized hopping f_r^dag f_r' + h.c. on one edge.
 *
 * x-edge: (rho/2)(X X + Y Y)_phys Z2_{r+x}
 * y-edge: (1/2)(-X Y + Y X)_phys Y2_r X2_{r+y}
 */
[[nodiscard]] inline PauliSum hopping_terms(const LatticeSpec &spec,
                                            const Edge &e) {
    const auto n = static_cast<std::size_t>(spec.num_qubits());
    const Site r = spec.wrap(e.origin);
    const Site s = edge_target(spec, e);
    const int pr = phys(spec, r);
    const int ps = phys(spec, s);
    PauliSum out(n);
    if (e.direction == Direction::X) {
        const double c = 0.5 * spec.rho();
        out.add(c, make_pauli(n, {{pr, Pauli::X}, {ps, Pauli::X}, {aux(spec, s), Pauli::Z}}));
        out.add(c, make_pauli(n, {{pr, Pauli::Y}, {ps, Pauli::Y}, {aux(spec, s), Pauli::Z}}));
    } else {
        const int ar = aux(spec, r);
        const int as = aux(spec, s);
        out.add(-0.5, make_pauli(n, {{pr, Pauli::X}, {ps, Pauli::Y}, {ar, Pauli::Y}, {as, Pauli::X}}));
        out.add(0.5, make_pauli(n, {{pr, Pauli::Y}, {ps, Pauli::X}, {ar, Pauli::Y}, {as, Pauli::X}}));
    }
    return out;
}

/// n_r n_r' = (1 - Z_r)(1 - Z_r')/4 expanded into I, Z, Z, ZZ.
[[nodiscard]] inline PauliSum interaction_terms(const LatticeSpec &spec,
                                                const Edge &e) {
    const auto n = static_cast<std::size_t>(spec.num_qubits());
    const int a = phys(spec, e.origin);
    const int b = phys(spec, edge_target(spec, e));
    PauliSum out(n);
    out.add(0.25, PauliString(n));
    out.add(-0.25, make_pauli(n, {{a, Pauli::Z}}));
    out.add(-0.25, make_pauli(n, {{b, Pauli::Z}}));
    out.add(0.25, make_pauli(n, {{a, Pauli::Z}, {b, Pauli::Z}}));
    return out;
}

/// n_r = (1 - Z1_r)/2
[[nodiscard]] inline PauliSum occupation(const LatticeSpec &spec, Site r) {
    const auto n = static_cast<std::size_t>(spec.num_qubits());
    PauliSum out(n);
    out.add(0.5, PauliString(n));
    out.add(-0.5, make_pauli(n, {{phys(spec, r), Pauli::Z}}));
    return out;
}

using Potentials = std::map<std::pair<int, int>, double>;

/**
 * H = -t sum_e hop_e + V sum_e n n + sum_r mu_r n_r. Identity terms are kept so
 * energies compare directly with the fermionic reference.
 */
[[nodiscard]] inline PauliSum tv_hamiltonian(const LatticeSpec &spec, double t,
                                             double v,
                                             const Potentials &potentials = {}) {
    PauliSum h(static_cast<std::size_t>(spec.num_qubits()));
    for (const Edge &e : edges(spec)) {
        h.add(hopping_terms(spec, e), -t);
        h.add(interaction_terms(spec, e), v);
    }
    for (const auto &[xy, mu] : potentials) {
        h.add(occupation(spec, {xy.first, xy.second}), mu);
    }
    h.simplify();
    return h;
}

[[nodiscard]] inline PauliSum number_sum(const LatticeSpec &spec) {
    PauliSum out(static_cast<std::size_t>(spec.num_qubits()));
    for (int i = 0; i < spec.num_sites(); ++i) {
        out.add(occupation(spec, spec.site_at(i)));
    }
    out.simplify();
    return out;
}

/// Quench pre-Hamiltonian potential -K (n_0 + n_y).
[[nodiscard]] inline Potentials quench_potentials(double k) {
    return {{{0, 0}, -k}, {{0, 1}, -k}};
}

} // namespace f2q
