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
 * Command-line front end. Every command is reachable in-process through
 * cli::run so tests can drive it without spawning a shell.
 *
 * Exit codes: 0 pass, 1 scientific failure, 2 usage or configuration error.
 * Machine-readable output (CSV, JSON, circuit text) goes to --output or to
 * stdout; human summaries go to stderr.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "f2q.hpp"

namespace f2q::cli {

enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

/// Configuration or flag error; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// INI key (section.name) to command-line flag.
[[nodiscard]] inline const std::map<std::string, std::string> &config_keys() {
    static const std::map<std::string, std::string> keys = {
        {"lattice.lx", "--lx"},
        {"lattice.ly", "--ly"},
        {"lattice.rho", "--rho"},
        {"model.t", "--t"},
        {"model.v", "--v"},
        {"model.nf", "--nf"},
        {"model.k", "--k"},
        {"trotter.dt", "--dt"},
        {"trotter.tmax", "--tmax"},
        {"trotter.steps", "--steps"},
        {"vqe.ansatz", "--ansatz"},
        {"vqe.layers", "--layers"},
        {"vqe.granularity", "--granularity"},
        {"vqe.pairs", "--pair"},
        {"optimizer.learning_rate", "--lr"},
        {"optimizer.beta1", "--beta1"},
        {"optimizer.beta2", "--beta2"},
        {"optimizer.epsilon", "--epsilon"},
        {"optimizer.decay", "--decay"},
        {"optimizer.max_steps", "--max-steps"},
        {"optimizer.seed", "--seed"},
        {"optimizer.window", "--window"},
        {"optimizer.tolerance", "--tolerance"},
        {"optimizer.init_scale", "--init-scale"},
        {"optimizer.restarts", "--restarts"},
        {"circuit.kind", "--kind"},
        {"circuit.native", "--native"},
        {"depth.sizes", "--sizes"},
        {"output.path", "--output"},
    };
    return keys;
}

namespace detail {

/// Parses "rx,ry,x" or "rx,ry,y"; ':' also separates (INI lists split on commas).
inline Edge parse_edge(const std::string &s) {
    std::string norm = s;
    std::replace(norm.begin(), norm.end(), ':', ',');
    std::vector<std::string> parts;
    std::stringstream ss(norm);
    std::string item;
    while (std::getline(ss, item, ',')) {
        parts.push_back(item);
    }
    if (parts.size() != 3 || (parts[2] != "x" && parts[2] != "y")) {
        throw UsageError("edge '" + s + "' must look like rx,ry,x or rx,ry,y");
    }
    try {
        return {{std::stoi(parts[0]), std::stoi(parts[1])},
                parts[2] == "x" ? Direction::X : Direction::Y};
    } catch (const std::exception &) {
        throw UsageError("edge '" + s + "' has non-integer coordinates");
    }
}

inline std::string edge_string(const Edge &e) {
    return std::to_string(e.origin.rx) + "," + std::to_string(e.origin.ry) + "," +
           (e.direction == Direction::X ? "x" : "y");
}

struct LatticeArgs {
    int lx = 2;
    int ly = 2;
    int rho = 0; ///< 0 selects the parity default

    void add(CLI::App *app) {
        app->add_option("--lx", lx, "lattice width")->capture_default_str();
        app->add_option("--ly", ly, "lattice height")->capture_default_str();
        app->add_option("--rho", rho, "parity factor (+1 even x even, -1 odd x odd); 0 = auto");
    }

    [[nodiscard]] LatticeSpec spec() const {
        try {
            return rho == 0 ? LatticeSpec::make(lx, ly) : LatticeSpec(lx, ly, rho);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
};

/// Output sink: a file if a path was given, otherwise the command's stdout.
class Sink {
  public:
    Sink(const std::string &path, std::ostream &fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw UsageError("cannot open output file '" + path + "'");
            }
            os_ = &file_;
        }
    }
    std::ostream &stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream *os_;
};

inline void apply_thread_env() {
    const char *env = std::getenv("F2Q_THREADS");
    if (env == nullptr || *env == '\0') {
        return;
    }
    char *end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
        throw UsageError("F2Q_THREADS must be a positive integer");
    }
#ifdef _OPENMP
    omp_set_num_threads(static_cast<int>(n));
#endif
}

/// Splits argv into the config path (if any) and the remaining tokens.
inline std::string take_config(std::vector<std::string> &args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config needs a file name");
            }
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    args = std::move(rest);
    return path;
}

/**
 * Translates an INI file into flags for `command`. Keys unknown to the
 * schema, or not accepted by the command, are rejected. Flags already present
 * on the command line win over the file.
 */
inline std::vector<std::string> config_tokens(const std::string &path, const CLI::App &command,
                                              const std::vector<std::string> &cli_tokens) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigINI().from_config(in);
    } catch (const CLI::ParseError &e) {
        throw UsageError(std::string("config file: ") + e.what());
    }
    std::vector<std::string> out;
    for (const CLI::ConfigItem &item : items) {
        std::string key;
        for (const auto &p : item.parents) {
            key += p + ".";
        }
        key += item.name;
        if (item.name == "++" || item.name == "--") {
            continue; // section markers emitted by the INI reader
        }
        const auto it = config_keys().find(key);
        if (it == config_keys().end()) {
            throw UsageError("unknown config key '" + key + "'");
        }
        const std::string &flag = it->second;
        if (command.get_option_no_throw(flag) == nullptr) {
            throw UsageError("config key '" + key + "' does not apply to '" +
                             command.get_name() + "'");
        }
        bool overridden = false;
        for (const auto &t : cli_tokens) {
            overridden = overridden || t == flag || t.rfind(flag + "=", 0) == 0;
        }
        if (overridden) {
            continue;
        }
        out.push_back(flag);
        for (const auto &v : item.inputs) {
            std::stringstream ss(v);
            std::string word;
            while (ss >> word) {
                out.push_back(word);
            }
        }
    }
    return out;
}

inline std::string fmt17(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Commands

struct CheckConstraintsArgs {
    detail::LatticeArgs lattice;
    std::vector<std::string> pairs;
};

/// Vacuum (plus optional pairs) stabilizer report at tolerance 1e-10.
inline int cmd_check_constraints(const CheckConstraintsArgs &a, std::ostream &out,
                                 std::ostream &err) {
    const LatticeSpec spec = a.lattice.spec();
    SparseState psi = sparse_zero_state(spec.num_qubits());
    apply_circuit(psi, vacuum_circuit(spec));
    for (const auto &p : a.pairs) {
        try {
            apply_circuit(psi, pair_creation(spec, detail::parse_edge(p)));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    const ConstraintSet cs = constraint_set(spec);
    int failures = 0;
    out << "# lattice " << spec.lx() << "x" << spec.ly() << " rho " << spec.rho() << "\n";
    for (const Stabilizer &s : cs.stabilizers) {
        const double value = expval(psi, s.string);
        const bool ok = std::abs(value - s.target) <= 1e-10;
        failures += ok ? 0 : 1;
        out << s.label << " " << detail::fmt17(value) << " target " << s.target << " "
            << (ok ? "PASS" : "FAIL") << "\n";
    }
    err << (failures == 0 ? "all " : "") << cs.size() - static_cast<std::size_t>(failures)
        << "/" << cs.size() << " constraints satisfied\n";
    return failures == 0 ? kPass : kFailure;
}

struct QuenchArgs {
    detail::LatticeArgs lattice{2, 4, 0};
    double t = 1.0;
    double v = 3.0;
    double k = 1.0;
    int nf = 2;
    double dt = 0.1;
    double tmax = 2.0;
    std::string output;
};

/// CSV: time,rx,ry,occ_trotter,occ_exact_encoded,occ_exact_fermionic.
inline int cmd_quench(const QuenchArgs &a, std::ostream &out, std::ostream &err) {
    QuenchConfig q;
    q.spec = a.lattice.spec();
    q.t = a.t;
    q.v = a.v;
    q.k = a.k;
    q.n_f = a.nf;
    q.dt = a.dt;
    q.tmax = a.tmax;
    try {
        (void)q.steps();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (q.spec.num_sites() > kMaxOracleSites) {
        throw UsageError("quench reference limited to 12 sites");
    }
    const QuenchResult r = run_quench(q);
    detail::Sink sink(a.output, out);
    std::ostream &os = sink.stream();
    os << "time,rx,ry,occ_trotter,occ_exact_encoded,occ_exact_fermionic\n";
    os << std::setprecision(17);
    for (std::size_t s = 0; s < r.times.size(); ++s) {
        for (int i = 0; i < q.spec.num_sites(); ++i) {
            const Site site = q.spec.site_at(i);
            const auto k = static_cast<std::size_t>(i);
            os << r.times[s] << "," << site.rx << "," << site.ry << "," << r.occ_trotter[s][k]
               << "," << r.occ_encoded[s][k] << "," << r.occ_fermionic[s][k] << "\n";
        }
    }
    err << "sector " << to_string(r.sector) << " steps " << r.times.size() - 1
        << " max_trotter_error " << detail::fmt17(r.trotter_error) << " reference_gap "
        << detail::fmt17(r.reference_gap) << "\n";
    if (r.reference_gap > 1e-8) {
        err << "FAIL: exact references disagree beyond 1e-8\n";
        return kFailure;
    }
    return kPass;
}

struct VqeArgs {
    detail::LatticeArgs lattice{2, 4, 0};
    double t = 1.0;
    double v = 3.0;
    int nf = 2;
    std::string ansatz = "agate";
    int layers = 3;
    std::string granularity = "per-edge";
    std::vector<std::string> pairs;
    OptimizerConfig opt;
    std::string output;
};

[[nodiscard]] inline nlohmann::json vqe_document(const VqeConfig &c, const OptimizerConfig &o,
                                                 const RunTrace &tr, double wall_seconds) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const Edge &e : c.pair_edges) {
        pairs.push_back(detail::edge_string(e));
    }
    nlohmann::json doc;
    doc["command"] = "vqe";
    doc["config"] = {
        {"lattice", {{"lx", c.spec.lx()}, {"ly", c.spec.ly()}, {"rho", c.spec.rho()}}},
        {"model", {{"t", c.t}, {"v", c.v}, {"nf", c.n_f}}},
        {"vqe",
         {{"ansatz", to_string(c.ansatz)},
          {"layers", c.layers},
          {"granularity", c.granularity == HvGranularity::PerEdge ? "per-edge" : "per-group"},
          {"pairs", pairs}}},
        {"optimizer",
         {{"learning_rate", o.learning_rate},
          {"beta1", o.beta1},
          {"beta2", o.beta2},
          {"epsilon", o.epsilon},
          {"decay", o.decay},
          {"max_steps", o.max_steps},
          {"seed", o.seed},
          {"window", o.window},
          {"tolerance", o.tolerance},
          {"init_scale", o.init_scale},
          {"restarts", o.restarts}}},
    };
    doc["seed"] = tr.seed;
    doc["steps"] = tr.steps;
    doc["converged"] = tr.converged;
    doc["trace"] = tr.energies;
    doc["best_energy"] = tr.best_energy;
    doc["final_energy"] = tr.final_energy;
    doc["exact_energy"] = tr.exact_energy;
    doc["relative_error"] = tr.reported_relative_error;
    doc["relative_error_raw"] = tr.relative_error;
    doc["relative_error_floor"] = kRelativeErrorFloor;
    doc["variational_bound_ok"] = tr.variational_bound_ok;
    doc["max_constraint_violation"] = tr.max_constraint_violation;
    doc["max_number_deviation"] = tr.max_number_deviation;
    doc["wall_time_s"] = wall_seconds;
    return doc;
}

inline int cmd_vqe(const VqeArgs &a, std::ostream &out, std::ostream &err) {
    VqeConfig c;
    c.spec = a.lattice.spec();
    c.t = a.t;
    c.v = a.v;
    c.n_f = a.nf;
    c.ansatz = a.ansatz == "hv" ? AnsatzKind::HV : AnsatzKind::AGate;
    c.layers = a.layers;
    c.granularity = a.granularity == "per-group" ? HvGranularity::PerGroup : HvGranularity::PerEdge;
    if (!a.pairs.empty()) {
        c.pair_edges.clear();
        for (const auto &p : a.pairs) {
            c.pair_edges.push_back(detail::parse_edge(p));
        }
    } else if (c.n_f != 2) {
        c.pair_edges.clear();
    }
    try {
        c.validate();
        a.opt.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (c.spec.num_sites() > kMaxOracleSites) {
        throw UsageError("exact reference limited to 12 sites");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const RunTrace tr = run(c, a.opt);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail::Sink sink(a.output, out);
    sink.stream() << vqe_document(c, a.opt, tr, wall).dump(2) << "\n";
    err << to_string(c.ansatz) << " layers " << c.layers << " V " << c.v << " energy "
        << detail::fmt17(tr.best_energy) << " exact " << detail::fmt17(tr.exact_energy)
        << " relative_error " << detail::fmt17(tr.reported_relative_error) << " steps "
        << tr.steps << "\n";
    const bool ok = tr.variational_bound_ok && tr.max_constraint_violation <= 1e-10 &&
                    tr.max_number_deviation <= 1e-10;
    return ok ? kPass : kFailure;
}

struct DepthRow {
    int size = 0;
    DepthReport trotter;
    int vacuum_two_qubit = 0;
};

struct DepthFit {
    double coefficient = 0.0;       ///< c in total_gates ~ c L^2
    double max_relative_residual = 0.0;
};

[[nodiscard]] inline std::vector<DepthRow> depth_rows(const std::vector<int> &sizes) {
    std::vector<DepthRow> rows;
    for (int l : sizes) {
        const LatticeSpec spec = LatticeSpec::make(l, l);
        DepthRow r;
        r.size = l;
        r.trotter = schedule(trotter_step(spec, 1.0, 1.0, 0.1));
        r.vacuum_two_qubit = count_arity(vacuum_circuit(spec), 2);
        rows.push_back(r);
    }
    return rows;
}

/// Least-squares c for total = c L^2 and the largest relative residual.
[[nodiscard]] inline DepthFit fit_quadratic(const std::vector<DepthRow> &rows) {
    double num = 0.0;
    double den = 0.0;
    for (const auto &r : rows) {
        const double l2 = static_cast<double>(r.size) * r.size;
        num += r.trotter.total_gates * l2;
        den += l2 * l2;
    }
    DepthFit f;
    f.coefficient = den > 0 ? num / den : 0.0;
    for (const auto &r : rows) {
        const double pred = f.coefficient * r.size * r.size;
        f.max_relative_residual =
            std::max(f.max_relative_residual, std::abs(r.trotter.total_gates - pred) / pred);
    }
    return f;
}

struct DepthArgs {
    std::vector<int> sizes{4, 6, 8, 10};
    std::string output;
};

inline int cmd_depth_report(const DepthArgs &a, std::ostream &out, std::ostream &err) {
    for (int l : a.sizes) {
        if (l < 2) {
            throw UsageError("lattice sizes must be >= 2");
        }
    }
    const auto rows = depth_rows(a.sizes);
    detail::Sink sink(a.output, out);
    std::ostream &os = sink.stream();
    os << "L,trotter_two_qubit_depth,total_gates,gates_1q,gates_2q,gates_3q,gates_4q,"
          "vacuum_two_qubit\n";
    for (const auto &r : rows) {
        auto count = [&](int k) {
            const auto it = r.trotter.counts_by_arity.find(k);
            return it == r.trotter.counts_by_arity.end() ? 0 : it->second;
        };
        os << r.size << "," << r.trotter.two_qubit_depth << "," << r.trotter.total_gates << ","
           << count(1) << "," << count(2) << "," << count(3) << "," << count(4) << ","
           << r.vacuum_two_qubit << "\n";
    }
    const DepthFit f = fit_quadratic(rows);
    err << "fit total_gates = c L^2: c " << detail::fmt17(f.coefficient)
        << " max_relative_residual " << detail::fmt17(f.max_relative_residual) << "\n";
    return kPass;
}

struct ExportArgs {
    detail::LatticeArgs lattice;
    std::string kind = "vacuum";
    std::vector<std::string> pairs;
    double t = 1.0;
    double v = 0.0;
    double dt = 0.1;
    int steps = 1;
    std::string ansatz = "agate";
    int layers = 1;
    std::string granularity = "per-edge";
    unsigned seed = 1234;
    double init_scale = 0.1;
    bool native = false;
    std::string output;
};

[[nodiscard]] inline Circuit build_export_circuit(const ExportArgs &a) {
    const LatticeSpec spec = a.lattice.spec();
    if (a.kind == "vacuum") {
        Circuit c = vacuum_circuit(spec);
        for (const auto &p : a.pairs) {
            c.append(pair_creation(spec, detail::parse_edge(p)));
        }
        return c;
    }
    if (a.kind == "trotter") {
        if (!(a.dt > 0) || a.steps < 1) {
            throw UsageError("trotter export needs dt > 0 and steps >= 1");
        }
        return trotter_circuit(spec, a.t, a.v, a.dt, a.steps);
    }
    if (a.kind == "ansatz") {
        if (a.layers < 0) {
            throw UsageError("layers must be non-negative");
        }
        if (a.ansatz == "agate") {
            const auto p = initial_parameters(agate_parameter_count(spec, a.layers),
                                              a.init_scale, a.seed);
            const Circuit c = ansatz_agate(spec, a.layers, p);
            return a.native ? expand_native(spec, c) : c;
        }
        const HvGranularity g =
            a.granularity == "per-group" ? HvGranularity::PerGroup : HvGranularity::PerEdge;
        const auto p =
            initial_parameters(hv_parameter_count(spec, a.layers, g), a.init_scale, a.seed);
        return ansatz_hv(spec, a.layers, p, g);
    }
    throw UsageError("unknown circuit kind '" + a.kind + "'");
}

inline int cmd_export_circuit(const ExportArgs &a, std::ostream &out, std::ostream &err) {
    const Circuit c = build_export_circuit(a);
    detail::Sink sink(a.output, out);
    sink.stream() << export_text(c);
    err << a.kind << " circuit: " << c.size() << " gates on " << c.num_qubits() << " qubits\n";
    return kPass;
}

struct SpectrumArgs {
    detail::LatticeArgs lattice;
    double t = 1.0;
    double v = 2.0;
    std::vector<int> nf;
};

/**
 * Encoded spectrum vs fermionic sectors. Without --nf, lattices of up to four
 * sites use the whole constrained subspace and larger ones the n_f = 2 sector.
 */
inline int cmd_spectrum_match(const SpectrumArgs &a, std::ostream &out, std::ostream &err) {
    LatticeSpec spec = LatticeSpec::make(2, 2);
    try {
        spec = a.lattice.rho == 0 ? LatticeSpec::make(a.lattice.lx, a.lattice.ly)
                                  : LatticeSpec::unchecked(a.lattice.lx, a.lattice.ly,
                                                           a.lattice.rho);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (spec.num_qubits() > kMaxSubspaceQubits || spec.num_sites() > kMaxOracleSites) {
        throw UsageError("spectrum match limited to 9 sites");
    }
    const PauliSum h = tv_hamiltonian(spec, a.t, a.v);
    const ConstraintSet cs = constraint_set(spec);
    std::vector<double> enc;
    std::vector<int> nfs = a.nf;
    try {
        if (nfs.empty() && spec.num_sites() <= 4) {
            const SubspaceBasis b = constrained_basis(spec, cs);
            for (const auto &[nf, mult] : number_spectrum(spec, b)) {
                nfs.push_back(nf);
            }
            enc = subspace_spectrum(h, b);
        } else {
            if (nfs.empty()) {
                nfs = {2};
            }
            for (int nf : nfs) {
                const auto part = sector_spectrum(h, spec, sector_basis(spec, cs, nf), nf);
                enc.insert(enc.end(), part.begin(), part.end());
            }
        }
    } catch (const std::exception &e) {
        // A flipped rho on odd lattices keeps only odd fermion numbers.
        out << "lattice " << spec.lx() << "x" << spec.ly() << " rho " << spec.rho()
            << ": no encoded states (" << e.what() << ")\nFAIL no sector matches\n";
        return kFailure;
    }
    const SectorMatch m = match_sector(spec, a.t, a.v, {}, nfs, enc);
    out << "lattice " << spec.lx() << "x" << spec.ly() << " rho " << spec.rho() << " t "
        << a.t << " V " << a.v << " levels " << enc.size() << " nf";
    for (int nf : nfs) {
        out << " " << nf;
    }
    out << "\n";
    const auto sectors = all_sectors();
    for (std::size_t i = 0; i < sectors.size(); ++i) {
        out << "sector " << to_string(sectors[i]) << " deviation "
            << detail::fmt17(m.deviations[i]) << "\n";
    }
    if (m.matched) {
        out << "PASS matched " << to_string(m.sector) << " deviation "
            << detail::fmt17(m.deviation) << "\n";
        return kPass;
    }
    out << "FAIL no sector matches (best deviation " << detail::fmt17(m.deviation) << ")\n";
    err << "no fermionic boundary sector reproduces the encoded spectrum\n";
    return kFailure;
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs the CLI on `args` (args[0] is the program name).
inline int run(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"f2q: local fermion-to-qubit circuits for the 2D t-V model"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expand all help");
    app.add_option("--config", "INI file with [lattice] [model] [trotter] [vqe] [optimizer] "
                               "[circuit] [depth] [output] sections");

    CheckConstraintsArgs cc;
    auto *c_cc = app.add_subcommand("check-constraints", "vacuum stabilizer report");
    cc.lattice.add(c_cc);
    c_cc->add_option("--pair", cc.pairs, "pair creation on edge rx,ry,x|y (repeatable)");

    QuenchArgs qa;
    auto *c_q = app.add_subcommand("quench", "quench trajectory as CSV");
    qa.lattice.add(c_q);
    c_q->add_option("--t", qa.t, "hopping")->capture_default_str();
    c_q->add_option("--v", qa.v, "interaction after the quench")->capture_default_str();
    c_q->add_option("--k", qa.k, "pre-quench potential strength")->capture_default_str();
    c_q->add_option("--nf", qa.nf, "fermion number")->capture_default_str();
    c_q->add_option("--dt", qa.dt, "Trotter step")->capture_default_str();
    c_q->add_option("--tmax", qa.tmax, "final time")->capture_default_str();
    c_q->add_option("--output", qa.output, "CSV path (default stdout)");

    VqeArgs va;
    auto *c_v = app.add_subcommand("vqe", "variational ground-state search (JSON)");
    va.lattice.add(c_v);
    c_v->add_option("--t", va.t, "hopping")->capture_default_str();
    c_v->add_option("--v", va.v, "interaction")->capture_default_str();
    c_v->add_option("--nf", va.nf, "fermion number")->capture_default_str();
    c_v->add_option("--ansatz", va.ansatz, "agate | hv")
        ->check(CLI::IsMember({"agate", "hv"}))
        ->capture_default_str();
    c_v->add_option("--layers", va.layers, "ansatz layers")->capture_default_str();
    c_v->add_option("--granularity", va.granularity, "hv parameters: per-edge | per-group")
        ->check(CLI::IsMember({"per-edge", "per-group"}))
        ->capture_default_str();
    c_v->add_option("--pair", va.pairs, "pair creation edge rx,ry,x|y (repeatable)");
    c_v->add_option("--lr", va.opt.learning_rate, "Adam learning rate")->capture_default_str();
    c_v->add_option("--beta1", va.opt.beta1)->capture_default_str();
    c_v->add_option("--beta2", va.opt.beta2)->capture_default_str();
    c_v->add_option("--epsilon", va.opt.epsilon)->capture_default_str();
    c_v->add_option("--decay", va.opt.decay, "lr_k = lr / (1 + decay k)")->capture_default_str();
    c_v->add_option("--max-steps", va.opt.max_steps)->capture_default_str();
    c_v->add_option("--seed", va.opt.seed)->capture_default_str();
    c_v->add_option("--window", va.opt.window, "convergence window")->capture_default_str();
    c_v->add_option("--tolerance", va.opt.tolerance, "windowed energy change")
        ->capture_default_str();
    c_v->add_option("--init-scale", va.opt.init_scale)->capture_default_str();
    c_v->add_option("--restarts", va.opt.restarts)->capture_default_str();
    c_v->add_option("--output", va.output, "JSON path (default stdout)");

    DepthArgs da;
    auto *c_d = app.add_subcommand("depth-report", "Trotter depth and gate counts per L");
    c_d->add_option("--sizes", da.sizes, "L values for L x L lattices")->capture_default_str();
    c_d->add_option("--output", da.output, "CSV path (default stdout)");

    ExportArgs ea;
    auto *c_e = app.add_subcommand("export-circuit", "write a circuit in text form");
    ea.lattice.add(c_e);
    c_e->add_option("--kind", ea.kind, "vacuum | trotter | ansatz")->capture_default_str();
    c_e->add_option("--pair", ea.pairs, "vacuum: pair creation edge (repeatable)");
    c_e->add_option("--t", ea.t)->capture_default_str();
    c_e->add_option("--v", ea.v)->capture_default_str();
    c_e->add_option("--dt", ea.dt)->capture_default_str();
    c_e->add_option("--steps", ea.steps, "Trotter steps")->capture_default_str();
    c_e->add_option("--ansatz", ea.ansatz, "agate | hv")
        ->check(CLI::IsMember({"agate", "hv"}))
        ->capture_default_str();
    c_e->add_option("--layers", ea.layers)->capture_default_str();
    c_e->add_option("--granularity", ea.granularity)
        ->check(CLI::IsMember({"per-edge", "per-group"}))
        ->capture_default_str();
    c_e->add_option("--seed", ea.seed, "seed of the random ansatz parameters")
        ->capture_default_str();
    c_e->add_option("--init-scale", ea.init_scale)->capture_default_str();
    c_e->add_flag("--native", ea.native, "expand vx/vy into native gates");
    c_e->add_option("--output", ea.output, "file path (default stdout)");

    SpectrumArgs sa;
    auto *c_s = app.add_subcommand("spectrum-match", "encoded vs fermionic spectra");
    sa.lattice.add(c_s);
    c_s->add_option("--t", sa.t)->capture_default_str();
    c_s->add_option("--v", sa.v)->capture_default_str();
    c_s->add_option("--nf", sa.nf, "fermion-number sectors (default: all on 2x2, else 2)");

    try {
        detail::apply_thread_env();
        std::vector<std::string> tokens(args.begin() + (args.empty() ? 0 : 1), args.end());
        const std::string config = detail::take_config(tokens);
        if (!config.empty()) {
            const CLI::App *cmd = nullptr;
            std::size_t at = 0;
            for (; at < tokens.size(); ++at) {
                cmd = app.get_subcommand_no_throw(tokens[at]);
                if (cmd != nullptr) {
                    break;
                }
            }
            if (cmd == nullptr) {
                throw UsageError("--config needs a command");
            }
            const std::vector<std::string> user(tokens.begin() + static_cast<std::ptrdiff_t>(at) + 1,
                                                tokens.end());
            const auto extra = detail::config_tokens(config, *cmd, user);
            tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at) + 1, extra.begin(),
                          extra.end());
        }
        std::reverse(tokens.begin(), tokens.end());
        app.parse(tokens);

        if (c_cc->parsed()) {
            return cmd_check_constraints(cc, out, err);
        }
        if (c_q->parsed()) {
            return cmd_quench(qa, out, err);
        }
        if (c_v->parsed()) {
            return cmd_vqe(va, out, err);
        }
        if (c_d->parsed()) {
            return cmd_depth_report(da, out, err);
        }
        if (c_e->parsed()) {
            return cmd_export_circuit(ea, out, err);
        }
        if (c_s->parsed()) {
            return cmd_spectrum_match(sa, out, err);
        }
        return kUsage;
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace f2q::cli
