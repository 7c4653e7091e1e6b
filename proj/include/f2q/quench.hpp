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
 * Quench protocol: prepare the ground state of the t-V model with a local
 * potential -K (n_0 + n_y) at V = 0, then evolve at interaction V with K = 0.
 * Occupations are tracked three ways: the Trotter circuit, Krylov evolution in
 * the encoded register, and exact diagonalization in Fock space.
 */
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "constructions.hpp"
#include "krylov.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "subspace.hpp"
#include "vqe.hpp"

namespace f2q {

struct QuenchConfig {
    LatticeSpec spec = LatticeSpec::make(2, 4);
    double t = 1.0;
    double v = 3.0;  ///< interaction after the quench
    double k = 1.0;  ///< pre-quench potential strength
    int n_f = 2;
    double dt = 0.1;
    double tmax = 2.0;

    /// Number of Trotter steps; tmax must be an integer multiple of dt.
    [[nodiscard]] int steps() const {
        if (!(dt > 0) || !(tmax > 0)) {
            throw std::invalid_argument("dt and tmax must be positive");
        }
        const double r = tmax / dt;
        const double n = std::round(r);
        if (std::abs(r - n) > 1e-9 * std::max(1.0, r)) {
            throw std::invalid_argument("tmax must be an integer multiple of dt");
        }
        return static_cast<int>(n);
    }
};

struct QuenchResult {
    std::vector<double> times;
    std::vector<std::vector<double>> occ_trotter;     ///< [time][site]
    std::vector<std::vector<double>> occ_encoded;
    std::vector<std::vector<double>> occ_fermionic;
    BCSector sector;
    double reference_gap = 0.0;   ///< max |encoded - fermionic|
    double trotter_error = 0.0;   ///< max |trotter - fermionic|
    double initial_gap = 0.0;     ///< spectral gap above the pre-quench ground state
    double max_constraint_violation = 0.0;
};

/// <n_r> for every site from the amplitudes of a dense register.
[[nodiscard]] inline std::vector<double> site_occupations(const LatticeSpec &spec,
                                                          const StateVector &psi) {
    std::vector<double> occ(static_cast<std::size_t>(spec.num_sites()), 0.0);
    for (Index i = 0; i < psi.dim(); ++i) {
        const double p = std::norm(psi[i]);
        if (p == 0.0) {
            continue;
        }
        for (int r = 0; r < spec.num_sites(); ++r) {
            if ((i >> phys(spec, spec.site_at(r))) & 1u) {
                occ[static_cast<std::size_t>(r)] += p;
            }
        }
    }
    return occ;
}

[[nodiscard]] inline QuenchResult run_quench(const QuenchConfig &q) {
    const int steps = q.steps();
    const LatticeSpec &spec = q.spec;
    const Potentials pre = quench_potentials(q.k);
    const ConstraintSet cs = constraint_set(spec);

    QuenchResult out;
    out.sector = matched_sector(spec, q.n_f);
    for (int s = 0; s <= steps; ++s) {
        out.times.push_back(s * q.dt);
    }

    // Fermionic reference, independent of the encoded register.
    const EDGround g0 = ed_ground(spec, q.t, 0.0, pre, out.sector, q.n_f);
    {
        const auto pre_spec = ed_spectrum(spec, q.t, 0.0, pre, out.sector, q.n_f);
        out.initial_gap = pre_spec.energies.size() > 1
                              ? pre_spec.energies[1] - pre_spec.energies[0]
                              : std::numeric_limits<double>::infinity();
    }
    out.occ_fermionic = ed_propagate(spec, q.t, q.v, {}, g0.vector.cast<cplx>(), out.sector,
                                     q.n_f, out.times)
                            .occupations;

    const SectorGround init =
        ground_in_sector(tv_hamiltonian(spec, q.t, 0.0, pre), spec, cs, q.n_f);
    const PauliSum h = tv_hamiltonian(spec, q.t, q.v);
    const Circuit step = fused(trotter_step(spec, q.t, q.v, q.dt));

    StateVector exact = init.state;
    StateVector trot = init.state;
    for (int s = 0; s <= steps; ++s) {
        if (s > 0) {
            exact = exact_propagate(exact, h, q.dt);
            apply_circuit(trot, step);
        }
        out.occ_encoded.push_back(site_occupations(spec, exact));
        out.occ_trotter.push_back(site_occupations(spec, trot));
        out.max_constraint_violation =
            std::max(out.max_constraint_violation, max_constraint_violation(trot, cs));
    }
    for (std::size_t s = 0; s < out.times.size(); ++s) {
        for (std::size_t r = 0; r < out.occ_fermionic[s].size(); ++r) {
            const double f = out.occ_fermionic[s][r];
            out.reference_gap = std::max(out.reference_gap, std::abs(out.occ_encoded[s][r] - f));
            out.trotter_error = std::max(out.trotter_error, std::abs(out.occ_trotter[s][r] - f));
        }
    }
    return out;
}

} // namespace f2q
