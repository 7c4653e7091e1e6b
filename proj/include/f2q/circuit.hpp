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
 * Circuit IR: gates over flat qubit indices, parameter slots for variational
 * angles, gate matrices and their parameter derivatives, and application to
 * dense or sparse states.
 *
 * Rotations follow RX(a) = exp(-i a X / 2) and analogues. CPHASE(a) is
 * diag(1, 1, 1, e^{i a}). For multi-qubit gates the first target is the most
 * significant bit of the matrix index, so controlled gates list the control
 * first.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "state.hpp"

namespace f2q {

enum class GateKind {
    X, Y, Z, H, S, Sdg, RX, RY, RZ, CNOT, CY, CZ, CH, CCZ, CPHASE, MATRIX
};

/// Matrix gates are either a fixed unitary or a member of a parametrized family.
enum class MatrixFamily { Fixed, VX, VY };

/// Binds one gate parameter to entry `slot` of a parameter vector, times `scale`.
struct ParamSlot {
    int slot = -1;
    double scale = 1.0;
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> targets;
    std::vector<double> params;
    std::vector<ParamSlot> slots; ///< empty, or one entry per param
    MatrixFamily family = MatrixFamily::Fixed;
    Matrix matrix;          ///< fixed MATRIX gates only
    std::string label;      ///< informational
    int declared_cost = 0;  ///< native two-qubit count of a MATRIX gate, 0 if none
};

[[nodiscard]] inline std::string kind_name(GateKind k) {
    switch (k) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::CNOT: return "cnot";
    case GateKind::CY: return "cy";
    case GateKind::CZ: return "cz";
    case GateKind::CH: return "ch";
    case GateKind::CCZ: return "ccz";
    case GateKind::CPHASE: return "cphase";
    case GateKind::MATRIX: return "matrix";
    }
    return "?";
}

/// Fixed arity of a kind; 0 for MATRIX (any 1..4).
[[nodiscard]] inline int kind_arity(GateKind k) {
    switch (k) {
    case GateKind::CNOT:
    case GateKind::CY:
    case GateKind::CZ:
    case GateKind::CH:
    case GateKind::CPHASE: return 2;
    case GateKind::CCZ: return 3;
    case GateKind::MATRIX: return 0;
    default: return 1;
    }
}

[[nodiscard]] inline int kind_param_count(GateKind k, MatrixFamily f = MatrixFamily::Fixed) {
    switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CPHASE: return 1;
    case GateKind::MATRIX: return f == MatrixFamily::Fixed ? 0 : 2;
    default: return 0;
    }
}

namespace gates {

inline constexpr double kPi = std::numbers::pi;

[[nodiscard]] inline Matrix pauli_x() { Matrix m(2, 2); m << 0, 1, 1, 0; return m; }
[[nodiscard]] inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
[[nodiscard]] inline Matrix pauli_z() { Matrix m(2, 2); m << 1, 0, 0, -1; return m; }
[[nodiscard]] inline Matrix hadamard() {
    Matrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}
[[nodiscard]] inline Matrix phase_s(bool dagger) {
    Matrix m = Matrix::Identity(2, 2);
    m(1, 1) = dagger ? cplx(0, -1) : cplx(0, 1);
    return m;
}

/// exp(-i a P / 2) for a single-qubit Pauli matrix P.
[[nodiscard]] inline Matrix rotation(const Matrix &p, double a) {
    return std::cos(a / 2) * Matrix::Identity(2, 2) - cplx(0, std::sin(a / 2)) * p;
}

/// |0><0| (x) I + |1><1| (x) u
[[nodiscard]] inline Matrix controlled(const Matrix &u) {
    const auto d = u.rows();
    Matrix m = Matrix::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = Matrix::Identity(d, d);
    m.bottomRightCorner(d, d) = u;
    return m;
}

/**
 * 3-qubit variational x-hop gate on (phys r, phys r+x, aux r+x).
 * Identity on |00>,|11> of the physical pair; in {|01>,|10>} the block
 * [[c I, e^{i phi} s Z], [e^{-i phi} s Z, -c I]] with Z on the auxiliary.
 * deriv = 0 or 1 returns the derivative in theta or phi instead.
 */
[[nodiscard]] inline Matrix vx_matrix(double theta, double phi, int deriv = -1) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    cplx up = std::exp(cplx(0, phi));
    cplx dn = std::exp(cplx(0, -phi));
    double one = 1.0;
    if (deriv == 0) {
        c = -std::sin(theta);
        s = std::cos(theta);
        one = 0.0;
    } else if (deriv == 1) {
        c = 0.0;
        up *= cplx(0, 1);
        dn *= cplx(0, -1);
        one = 0.0;
    }
    Matrix m = Matrix::Zero(8, 8);
    for (int z = 0; z < 2; ++z) {
        const double zs = z == 0 ? 1.0 : -1.0;
        m(0b000 | z, 0b000 | z) = one;
        m(0b110 | z, 0b110 | z) = one;
        m(0b010 | z, 0b010 | z) = c;
        m(0b100 | z, 0b100 | z) = -c;
        m(0b010 | z, 0b100 | z) = up * s * zs;
        m(0b100 | z, 0b010 | z) = dn * s * zs;
    }
    return m;
}

/**
 * 4-qubit variational y-hop gate on (phys r, phys r+y, aux r, aux r+y).
 * Identity on |00>,|11> of the physical pair; in {|01>,|10>} the block
 * [[c I, -i e^{i phi} s P], [i e^{-i phi} s P, -c I]] with P = Y (x) X on the
 * auxiliary pair.
 */
[[nodiscard]] inline Matrix vy_matrix(double theta, double phi, int deriv = -1) {
    Matrix p = Matrix::Zero(4, 4);
    p(0, 3) = p(1, 2) = cplx(0, -1);
    p(2, 1) = p(3, 0) = cplx(0, 1);
    double c = std::cos(theta);
    double s = std::sin(theta);
    cplx up = cplx(0, -1) * std::exp(cplx(0, phi));
    cplx dn = cplx(0, 1) * std::exp(cplx(0, -phi));
    double one = 1.0;
    if (deriv == 0) {
        c = -std::sin(theta);
        s = std::cos(theta);
        one = 0.0;
    } else if (deriv == 1) {
        c = 0.0;
        up *= cplx(0, 1);
        dn *= cplx(0, -1);
        one = 0.0;
    }
    Matrix m = Matrix::Zero(16, 16);
    m.block(0, 0, 4, 4) = one * Matrix::Identity(4, 4);
    m.block(12, 12, 4, 4) = one * Matrix::Identity(4, 4);
    m.block(4, 4, 4, 4) = c * Matrix::Identity(4, 4);
    m.block(8, 8, 4, 4) = -c * Matrix::Identity(4, 4);
    m.block(4, 8, 4, 4) = up * s * p;
    m.block(8, 4, 4, 4) = dn * s * p;
    return m;
}

} // namespace gates

/// Unitary of a gate at its current parameter values.
[[nodiscard]] inline Matrix gate_matrix(const Gate &g) {
    using namespace gates;
    auto p = [&g](std::size_t i) { return g.params.at(i); };
    switch (g.kind) {
    case GateKind::X: return pauli_x();
    case GateKind::Y: return pauli_y();
    case GateKind::Z: return pauli_z();
    case GateKind::H: return hadamard();
    case GateKind::S: return phase_s(false);
    case GateKind::Sdg: return phase_s(true);
    case GateKind::RX: return rotation(pauli_x(), p(0));
    case GateKind::RY: return rotation(pauli_y(), p(0));
    case GateKind::RZ: return rotation(pauli_z(), p(0));
    case GateKind::CNOT: return controlled(pauli_x());
    case GateKind::CY: return controlled(pauli_y());
    case GateKind::CZ: return controlled(pauli_z());
    case GateKind::CH: return controlled(hadamard());
    case GateKind::CCZ: {
        Matrix m = Matrix::Identity(8, 8);
        m(7, 7) = -1;
        return m;
    }
    case GateKind::CPHASE: {
        Matrix m = Matrix::Identity(4, 4);
        m(3, 3) = std::exp(cplx(0, p(0)));
        return m;
    }
    case GateKind::MATRIX:
        switch (g.family) {
        case MatrixFamily::VX: return vx_matrix(p(0), p(1));
        case MatrixFamily::VY: return vy_matrix(p(0), p(1));
        case MatrixFamily::Fixed: return g.matrix;
        }
    }
    throw std::logic_error("unknown gate kind");
}

/// d U / d params[k] at the current parameter values.
[[nodiscard]] inline Matrix gate_derivative(const Gate &g, std::size_t k) {
    using namespace gates;
    const Matrix u = gate_matrix(g);
    const cplx mi(0, -0.5);
    switch (g.kind) {
    case GateKind::RX: return mi * pauli_x() * u;
    case GateKind::RY: return mi * pauli_y() * u;
    case GateKind::RZ: return mi * pauli_z() * u;
    case GateKind::CPHASE: {
        Matrix d = Matrix::Zero(4, 4);
        d(3, 3) = cplx(0, 1) * u(3, 3);
        return d;
    }
    case GateKind::MATRIX:
        if (g.family == MatrixFamily::VX) {
            return vx_matrix(g.params.at(0), g.params.at(1), static_cast<int>(k));
        }
        if (g.family == MatrixFamily::VY) {
            return vy_matrix(g.params.at(0), g.params.at(1), static_cast<int>(k));
        }
        break;
    default: break;
    }
    throw std::invalid_argument("gate has no parameter " + std::to_string(k));
}

/**
 * @brief Ordered gate list on a register of n qubits, with a parameter table.
 *
 * Gates whose parameters carry slots read them from a parameter vector via
 * bind(); unbound parameters are fixed angles.
 */
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits) : n_(n_qubits) {
        if (n_qubits <= 0) {
            throw std::invalid_argument("circuit register must be non-empty");
        }
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] int num_parameters() const { return n_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    /// Grows the parameter table (slots referenced by gates must fit).
    void set_num_parameters(int n) {
        if (n < n_params_) {
            throw std::invalid_argument("cannot shrink the parameter table");
        }
        n_params_ = n;
    }

    Circuit &add(Gate g) {
        const int arity = kind_arity(g.kind);
        if (g.kind == GateKind::MATRIX) {
            if (g.targets.empty() || g.targets.size() > 4) {
                throw std::invalid_argument("matrix gates act on 1 to 4 qubits");
            }
            if (g.family == MatrixFamily::Fixed) {
                if (g.matrix.rows() != (Eigen::Index{1} << g.targets.size()) ||
                    !is_unitary(g.matrix)) {
                    throw std::invalid_argument("matrix gate is not a unitary of matching size");
                }
            } else if (g.targets.size() != (g.family == MatrixFamily::VX ? 3u : 4u)) {
                throw std::invalid_argument("variational matrix gate has wrong arity");
            }
        } else if (static_cast<int>(g.targets.size()) != arity) {
            throw std::invalid_argument(kind_name(g.kind) + " gate arity mismatch");
        }
        if (static_cast<int>(g.params.size()) != kind_param_count(g.kind, g.family)) {
            throw std::invalid_argument(kind_name(g.kind) + " gate parameter count mismatch");
        }
        if (!g.slots.empty() && g.slots.size() != g.params.size()) {
            throw std::invalid_argument("parameter slots do not match parameters");
        }
        check_targets(g.targets, n_);
        for (const auto &s : g.slots) {
            if (s.slot >= n_params_) {
                throw std::out_of_range("parameter slot outside the parameter table");
            }
        }
        gates_.push_back(std::move(g));
        return *this;
    }

    Circuit &add(GateKind kind, std::vector<int> targets, std::vector<double> params = {},
                 std::vector<ParamSlot> slots = {}) {
        Gate g;
        g.kind = kind;
        g.targets = std::move(targets);
        g.params = std::move(params);
        g.slots = std::move(slots);
        return add(std::move(g));
    }

    /// Appends another circuit on the same register; its slots are kept as is.
    Circuit &append(const Circuit &o) {
        if (o.n_ != n_) {
            throw std::invalid_argument("appending a circuit on a different register");
        }
        n_params_ = std::max(n_params_, o.n_params_);
        const std::size_t offset = gates_.size();
        for (const auto &g : o.gates_) {
            add(g);
        }
        for (std::size_t b : o.block_ends_) {
            block_ends_.push_back(offset + b);
        }
        return *this;
    }

    /**
     * Closes a block at the current end of the gate list. Builders close a
     * block after each term whose product commutes with the constraint
     * stabilizers and the number operator.
     */
    void end_block() {
        if (!gates_.empty() && (block_ends_.empty() || block_ends_.back() != gates_.size())) {
            block_ends_.push_back(gates_.size());
        }
    }

    /// Exclusive end index of every closed block, ascending.
    [[nodiscard]] const std::vector<std::size_t> &block_ends() const { return block_ends_; }

    /// Writes params[slot] * scale into every bound gate parameter.
    void bind(const std::vector<double> &params) {
        if (static_cast<int>(params.size()) != n_params_) {
            throw std::invalid_argument("parameter vector has " + std::to_string(params.size()) +
                                        " entries, circuit expects " +
                                        std::to_string(n_params_));
        }
        for (auto &g : gates_) {
            for (std::size_t k = 0; k < g.slots.size(); ++k) {
                if (g.slots[k].slot >= 0) {
                    g.params[k] = g.slots[k].scale * params[static_cast<std::size_t>(g.slots[k].slot)];
                }
            }
        }
    }

  private:
    int n_ = 0;
    int n_params_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::size_t> block_ends_;
};

[[nodiscard]] inline Circuit bound(Circuit c, const std::vector<double> &params) {
    c.bind(params);
    return c;
}

/// Inverse circuit; parametrized matrix gates become fixed matrices.
[[nodiscard]] inline Circuit adjoint(const Circuit &c) {
    Circuit out(c.num_qubits());
    for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
        Gate g = *it;
        g.slots.clear();
        switch (g.kind) {
        case GateKind::S: g.kind = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind = GateKind::S; break;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CPHASE: g.params[0] = -g.params[0]; break;
        case GateKind::MATRIX:
            g.matrix = gate_matrix(*it).adjoint();
            g.family = MatrixFamily::Fixed;
            g.params.clear();
            g.label += "^dag";
            break;
        default: break;
        }
        out.add(std::move(g));
    }
    return out;
}

template <QuantumState S>
void apply_gate(S &state, const Gate &g) {
    if (g.targets.empty()) {
        return;
    }
    state.apply(CompiledGate(gate_matrix(g), g.targets));
}

template <QuantumState S>
void apply_circuit(S &state, const Circuit &c) {
    if (c.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("circuit and state registers differ");
    }
    for (const Gate &g : c.gates()) {
        apply_gate(state, g);
    }
}

/// Full 2^n x 2^n unitary of a small circuit (n <= 10), by column simulation.
[[nodiscard]] inline Matrix circuit_unitary(const Circuit &c) {
    const int n = c.num_qubits();
    if (n > 10) {
        throw std::length_error("circuit_unitary limited to 10 qubits");
    }
    const Index dim = Index{1} << n;
    Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Index col = 0; col < dim; ++col) {
        StateVector s(n);
        s[col] = 1.0;
        apply_circuit(s, c);
        for (Index row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[row];
        }
    }
    return u;
}

/**
 * Greedy fusion of consecutive gates into matrix gates on at most
 * `max_qubits` qubits. The product is exact; parameter slots are dropped.
 */
[[nodiscard]] inline Circuit fused(const Circuit &c, std::size_t max_qubits = 4) {
    if (max_qubits < 1 || max_qubits > 4) {
        throw std::invalid_argument("fusion width must be 1..4");
    }
    Circuit out(c.num_qubits());
    std::vector<int> block;
    std::vector<const Gate *> pending;
    auto flush = [&]() {
        if (pending.empty()) {
            return;
        }
        if (pending.size() == 1) {
            Gate g = *pending.front();
            g.slots.clear();
            out.add(std::move(g));
        } else {
            const int k = static_cast<int>(block.size());
            // Block qubit m sits at local bit k-1-m so block[0] is the MSB.
            auto local = [&](int q) {
                const auto m = std::find(block.begin(), block.end(), q) - block.begin();
                return k - 1 - static_cast<int>(m);
            };
            const Eigen::Index dim = Eigen::Index{1} << k;
            Matrix u(dim, dim);
            for (Eigen::Index col = 0; col < dim; ++col) {
                StateVector s(k);
                s[static_cast<Index>(col)] = 1.0;
                for (const Gate *g : pending) {
                    std::vector<int> t;
                    for (int q : g->targets) {
                        t.push_back(local(q));
                    }
                    s.apply(CompiledGate(gate_matrix(*g), t));
                }
                for (Eigen::Index row = 0; row < dim; ++row) {
                    u(row, col) = s[static_cast<Index>(row)];
                }
            }
            Gate g;
            g.kind = GateKind::MATRIX;
            g.targets = block;
            g.matrix = std::move(u);
            g.label = "fused";
            out.add(std::move(g));
        }
        block.clear();
        pending.clear();
    };
    for (const Gate &g : c.gates()) {
        std::vector<int> merged = block;
        for (int q : g.targets) {
            if (std::find(merged.begin(), merged.end(), q) == merged.end()) {
                merged.push_back(q);
            }
        }
        if (merged.size() > max_qubits) {
            flush();
            merged = g.targets;
        }
        block = std::move(merged);
        pending.push_back(&g);
    }
    flush();
    return out;
}

/// Number of gates acting on exactly k qubits.
[[nodiscard]] inline int count_arity(const Circuit &c, std::size_t k) {
    return static_cast<int>(std::count_if(c.gates().begin(), c.gates().end(),
                                          [k](const Gate &g) { return g.targets.size() == k; }));
}

} // namespace f2q
