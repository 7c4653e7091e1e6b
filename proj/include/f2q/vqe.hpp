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
 * Variational ground-state search: ansatz energy and gradients on exact
 * statevectors, and an Adam loop with a recorded trace.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "circuit.hpp"
#include "constructions.hpp"
#include "oracle.hpp"
#include "operators.hpp"
#include "state.hpp"
#include "subspace.hpp"
#include "support.hpp"

namespace f2q {

enum class AnsatzKind { AGate, HV };

[[nodiscard]] inline std::string to_string(AnsatzKind a) {
    return a == AnsatzKind::AGate ? "agate" : "hv";
}

struct OptimizerConfig {
    double learning_rate = 1e-2;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double decay = 1e-3;        ///< lr_k = learning_rate / (1 + decay * k)
    int max_steps = 5000;
    unsigned seed = 1234;
    int window = 100;           ///< stop when |E_k - E_{k-window}| < tolerance
    double tolerance = 1e-10;
    double init_scale = 0.1;    ///< parameters start uniform in [-init_scale, init_scale]
    int restarts = 0;           ///< extra random restarts; the best run is kept

    void validate() const {
        if (!(learning_rate > 0)) {
            throw std::invalid_argument("learning_rate must be positive");
        }
        if (!(beta1 > 0 && beta1 < 1) || !(beta2 > 0 && beta2 < 1)) {
            throw std::invalid_argument("beta1 and beta2 must lie in (0, 1)");
        }
        if (!(epsilon > 0) || decay < 0 || max_steps < 0 || window < 1 || restarts < 0 ||
            init_scale < 0) {
            throw std::invalid_argument("invalid optimizer settings");
        }
    }
};

struct VqeConfig {
    LatticeSpec spec = LatticeSpec::make(2, 4);
    double t = 1.0;
    double v = 0.0;
    int n_f = 2;
    AnsatzKind ansatz = AnsatzKind::AGate;
    int layers = 3;
    HvGranularity granularity = HvGranularity::PerEdge;
    std::vector<Edge> pair_edges{Edge{{0, 0}, Direction::X}}; ///< A-gate initial state

    void validate() const {
        if (layers < 0) {
            throw std::invalid_argument("layers must be non-negative");
        }
        if (n_f < 0 || n_f % 2 != 0) {
            throw std::invalid_argument("n_f must be even and non-negative");
        }
        if (ansatz == AnsatzKind::AGate &&
            static_cast<int>(pair_edges.size()) * 2 != n_f) {
            throw std::invalid_argument("n_f must equal twice the number of pair-creation edges");
        }
    }
};

/**
 * BC sector of the fermionic oracle that reproduces the encoded spectrum at
 * fixed n_f. Cached per lattice and n_f; throws if no sector matches.
 */
[[nodiscard]] inline BCSector matched_sector(const LatticeSpec &spec, int n_f) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, BCSector> cache;
    const auto key = std::make_tuple(spec.lx(), spec.ly(), spec.rho(), n_f);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    // Generic couplings so accidental degeneracies do not mask a mismatch.
    constexpr double t = 1.0;
    constexpr double v = 0.731;
    const PauliSum h = tv_hamiltonian(spec, t, v);
    const SubspaceBasis b = sector_basis(spec, constraint_set(spec), n_f);
    const auto enc = sector_spectrum(h, spec, b, n_f);
    const SectorMatch m = match_sector(spec, t, v, {}, {n_f}, enc);
    if (!m.matched) {
        throw std::runtime_error("no fermionic BC sector matches the encoded spectrum");
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = m.sector;
    return m.sector;
}

/// Exact ground energy of the sector from the fermionic oracle.
[[nodiscard]] inline double exact_energy(const VqeConfig &c) {
    return ed_ground(c.spec, c.t, c.v, {}, matched_sector(c.spec, c.n_f), c.n_f).energy;
}

/**
 * Energy landscape E(params) = <psi0| U(params)^dag H U(params) |psi0>.
 * The A-gate ansatz starts from vacuum plus pair creations; the HV ansatz
 * starts from the free-fermion (V = 0) ground state of the sector.
 */
class VqeProblem {
  public:
    explicit VqeProblem(VqeConfig config)
        : config_(std::move(config)),
          h_(tv_hamiltonian(config_.spec, config_.t, config_.v)),
          grouped_(h_) {
        config_.validate();
        const LatticeSpec &spec = config_.spec;
        if (config_.ansatz == AnsatzKind::AGate) {
            initial_ = zero_state(spec.num_qubits());
            apply_circuit(initial_, vacuum_circuit(spec));
            for (const Edge &e : config_.pair_edges) {
                apply_circuit(initial_, pair_creation(spec, e));
            }
            const int np = agate_parameter_count(spec, config_.layers);
            circuit_ = ansatz_agate(spec, config_.layers, std::vector<double>(np, 0.0));
        } else {
            const PauliSum h0 = tv_hamiltonian(spec, config_.t, 0.0);
            initial_ = ground_in_sector(h0, spec, constraint_set(spec), config_.n_f).state;
            const int np = hv_parameter_count(spec, config_.layers, config_.granularity);
            circuit_ = ansatz_hv(spec, config_.layers, std::vector<double>(np, 0.0),
                                 config_.granularity);
        }
        space_ = SupportSpace::of(sector_basis(spec, constraint_set(spec), config_.n_f));
        double dropped = 0.0;
        initial_r_ = space_.restrict(initial_, &dropped);
        if (dropped > 1e-10) {
            throw std::runtime_error("initial state leaks out of the constrained sector");
        }
        h_r_ = space_.restrict_operator(h_);
        program_ = BlockProgram(circuit_);
    }

    [[nodiscard]] const VqeConfig &config() const { return config_; }
    [[nodiscard]] const PauliSum &hamiltonian() const { return h_; }
    [[nodiscard]] const StateVector &initial_state() const { return initial_; }
    [[nodiscard]] int num_parameters() const { return circuit_.num_parameters(); }

    [[nodiscard]] Circuit circuit(const std::vector<double> &params) const {
        return bound(circuit_, params);
    }

    [[nodiscard]] StateVector state(const std::vector<double> &params) const {
        StateVector psi = initial_;
        apply_circuit(psi, circuit(params));
        return psi;
    }

    /// Energy from the restricted-support simulation of the block program.
    [[nodiscard]] double energy(const std::vector<double> &params) const {
        check_parameters(params);
        RestrictedVector v = initial_r_;
        for (std::size_t b = 0; b < program_.size(); ++b) {
            v = space_.apply(program_.evaluate(b, params, false).u, program_.block(b).targets, v);
        }
        return v.dot(h_r_ * v).real();
    }

    /// Energy from the full native circuit on the dense register.
    [[nodiscard]] double energy_dense(const std::vector<double> &params) const {
        return expectation(state(params), grouped_).real();
    }

    [[nodiscard]] const SupportSpace &support() const { return space_; }

    /// Central differences with step h on exact energies.
    [[nodiscard]] std::vector<double> gradient_fd(const std::vector<double> &params,
                                                  double h = 1e-4) const {
        std::vector<double> g(params.size());
        std::vector<double> p = params;
        for (std::size_t k = 0; k < params.size(); ++k) {
            p[k] = params[k] + h;
            const double ep = energy(p);
            p[k] = params[k] - h;
            const double em = energy(p);
            p[k] = params[k];
            g[k] = (ep - em) / (2 * h);
        }
        return g;
    }

    /**
     * Exact gradient by reverse-mode sweep: one forward pass, then gates are
     * undone one by one on both |psi> and H|psi>, accumulating
     * 2 Re <lambda| dU |psi_{k-1}> for every bound parameter.
     */
    [[nodiscard]] std::vector<double> gradient_dense(const std::vector<double> &params,
                                                     double *energy_out = nullptr) const {
        const Circuit c = circuit(params);
        StateVector phi = initial_;
        apply_circuit(phi, c);
        StateVector lambda = apply_sum(grouped_, phi);
        if (energy_out != nullptr) {
            *energy_out = inner(phi, lambda).real();
        }
        std::vector<double> g(params.size(), 0.0);
        const auto &gs = c.gates();
        for (auto it = gs.rbegin(); it != gs.rend(); ++it) {
            const Matrix udag = gate_matrix(*it).adjoint();
            const CompiledGate inv(udag, it->targets);
            phi.apply(inv);
            for (std::size_t k = 0; k < it->slots.size(); ++k) {
                const ParamSlot &s = it->slots[k];
                if (s.slot < 0) {
                    continue;
                }
                const CompiledGate d(gate_derivative(*it, k), it->targets);
                g[static_cast<std::size_t>(s.slot)] +=
                    2.0 * s.scale * phi.local_matrix_element(lambda, d).real();
            }
            lambda.apply(inv);
        }
        return g;
    }

    /// Reverse-mode gradient on the restricted support, block by block.
    [[nodiscard]] std::vector<double> gradient(const std::vector<double> &params,
                                               double *energy_out = nullptr) const {
        check_parameters(params);
        const std::size_t nb = program_.size();
        std::vector<BlockProgram::Evaluated> ev;
        ev.reserve(nb);
        RestrictedVector phi = initial_r_;
        for (std::size_t b = 0; b < nb; ++b) {
            ev.push_back(program_.evaluate(b, params, true));
            phi = space_.apply(ev.back().u, program_.block(b).targets, phi);
        }
        RestrictedVector lambda = h_r_ * phi;
        if (energy_out != nullptr) {
            *energy_out = phi.dot(lambda).real();
        }
        std::vector<double> g(params.size(), 0.0);
        for (std::size_t b = nb; b-- > 0;) {
            const auto &targets = program_.block(b).targets;
            const Matrix udag = ev[b].u.adjoint();
            phi = space_.apply(udag, targets, phi);
            for (const auto &[slot, d] : ev[b].derivatives) {
                g[static_cast<std::size_t>(slot)] +=
                    2.0 * lambda.dot(space_.apply(d, targets, phi)).real();
            }
            lambda = space_.apply(udag, targets, lambda);
        }
        return g;
    }

  private:
    void check_parameters(const std::vector<double> &params) const {
        if (static_cast<int>(params.size()) != num_parameters()) {
            throw std::invalid_argument("ansatz expects " + std::to_string(num_parameters()) +
                                        " parameters, got " + std::to_string(params.size()));
        }
    }

    VqeConfig config_;
    PauliSum h_;
    GroupedSum grouped_;
    StateVector initial_;
    Circuit circuit_;
    SupportSpace space_;
    RestrictedVector initial_r_;
    Eigen::SparseMatrix<cplx> h_r_;
    BlockProgram program_;
};

struct RunTrace {
    std::vector<double> energies;      ///< energy before each step
    std::vector<double> best_energies; ///< running minimum
    std::vector<double> best_params;
    double best_energy = 0.0;
    double final_energy = 0.0;
    double exact_energy = 0.0;
    double relative_error = 0.0;
    double reported_relative_error = 0.0; ///< floored to 0 below 1e-6
    int steps = 0;
    bool converged = false;
    bool variational_bound_ok = true;
    double max_constraint_violation = 0.0; ///< at first and last step
    double max_number_deviation = 0.0;
    unsigned seed = 0;
};

inline constexpr double kRelativeErrorFloor = 1e-6;

[[nodiscard]] inline double floor_relative_error(double r) {
    return r < kRelativeErrorFloor ? 0.0 : r;
}

[[nodiscard]] inline std::vector<double> initial_parameters(int n, double scale, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (double &x : p) {
        x = u(rng);
    }
    return p;
}

namespace detail {

inline void check_state(const VqeProblem &prob, const std::vector<double> &params,
                        const ConstraintSet &cs, const PauliSum &number, RunTrace &tr) {
    const StateVector psi = prob.state(params);
    tr.max_constraint_violation =
        std::max(tr.max_constraint_violation, max_constraint_violation(psi, cs));
    tr.max_number_deviation = std::max(
        tr.max_number_deviation, std::abs(expval(psi, number) - prob.config().n_f));
}

inline RunTrace adam_run(const VqeProblem &prob, const OptimizerConfig &opt, unsigned seed) {
    RunTrace tr;
    tr.seed = seed;
    const auto n = static_cast<std::size_t>(prob.num_parameters());
    std::vector<double> p = initial_parameters(prob.num_parameters(), opt.init_scale, seed);
    std::vector<double> m(n, 0.0);
    std::vector<double> v(n, 0.0);
    const ConstraintSet cs = constraint_set(prob.config().spec);
    const PauliSum number = number_sum(prob.config().spec);
    check_state(prob, p, cs, number, tr);
    tr.best_energy = std::numeric_limits<double>::infinity();
    double b1t = 1.0;
    double b2t = 1.0;
    for (int step = 0; step < opt.max_steps; ++step) {
        double e = 0.0;
        const std::vector<double> g = prob.gradient(p, &e);
        tr.energies.push_back(e);
        if (e < tr.best_energy) {
            tr.best_energy = e;
            tr.best_params = p;
        }
        tr.best_energies.push_back(tr.best_energy);
        tr.steps = step + 1;
        const auto k = tr.energies.size();
        if (k > static_cast<std::size_t>(opt.window) &&
            std::abs(tr.energies[k - 1] - tr.energies[k - 1 - static_cast<std::size_t>(opt.window)]) <
                opt.tolerance) {
            tr.converged = true;
            break;
        }
        const double lr = opt.learning_rate / (1.0 + opt.decay * step);
        b1t *= opt.beta1;
        b2t *= opt.beta2;
        for (std::size_t i = 0; i < n; ++i) {
            m[i] = opt.beta1 * m[i] + (1 - opt.beta1) * g[i];
            v[i] = opt.beta2 * v[i] + (1 - opt.beta2) * g[i] * g[i];
            const double mh = m[i] / (1 - b1t);
            const double vh = v[i] / (1 - b2t);
            p[i] -= lr * mh / (std::sqrt(vh) + opt.epsilon);
        }
    }
    if (tr.best_params.empty()) {
        tr.best_params = p;
        tr.best_energy = prob.energy(p);
    }
    tr.final_energy = tr.energies.empty() ? tr.best_energy : tr.energies.back();
    check_state(prob, tr.best_params, cs, number, tr);
    return tr;
}

} // namespace detail

/// Adam optimization with optional restarts; the run with the lowest energy is kept.
[[nodiscard]] inline RunTrace run(const VqeConfig &config, const OptimizerConfig &opt) {
    opt.validate();
    const VqeProblem prob(config);
    RunTrace best;
    for (int r = 0; r <= opt.restarts; ++r) {
        RunTrace tr = detail::adam_run(prob, opt, opt.seed + static_cast<unsigned>(r));
        if (r == 0 || tr.best_energy < best.best_energy) {
            best = std::move(tr);
        }
    }
    best.exact_energy = exact_energy(config);
    const double scale = std::abs(best.exact_energy) > 1e-12 ? std::abs(best.exact_energy) : 1.0;
    best.relative_error = std::abs(best.best_energy - best.exact_energy) / scale;
    best.reported_relative_error = floor_relative_error(best.relative_error);
    best.variational_bound_ok = best.best_energy >= best.exact_energy - 1e-9;
    return best;
}

} // namespace f2q
