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
 * Simulation restricted to the computational-basis support S of a subspace.
 *
 * If an operator A maps the subspace into itself, then P_S A P_S agrees with
 * A on every subspace vector: amplitudes that A sends outside S cancel
 * exactly. Circuits whose marked blocks each preserve the subspace can
 * therefore be run block by block on |S| amplitudes instead of 2^n.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "circuit.hpp"
#include "pauli.hpp"
#include "state.hpp"
#include "subspace.hpp"

namespace f2q {

using RestrictedVector = Eigen::VectorXcd;

inline constexpr int kMaxSupportQubits = 24;

/// Sorted basis-state support with constant-time position lookup.
class SupportSpace {
  public:
    SupportSpace() = default;
    SupportSpace(int n_qubits, std::vector<Index> indices) : n_(n_qubits), idx_(std::move(indices)) {
        if (n_qubits <= 0 || n_qubits > kMaxSupportQubits) {
            throw std::length_error("support lookup limited to 24 qubits");
        }
        std::sort(idx_.begin(), idx_.end());
        idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
        pos_.assign(std::size_t{1} << n_qubits, -1);
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            if (idx_[p] >> n_qubits) {
                throw std::out_of_range("support index outside the register");
            }
            pos_[idx_[p]] = static_cast<std::int32_t>(p);
        }
    }

    /// Union of the supports of all basis vectors.
    [[nodiscard]] static SupportSpace of(const SubspaceBasis &b) {
        std::vector<Index> all;
        for (const auto &v : b.vectors) {
            for (const auto &[i, a] : v) {
                all.push_back(i);
            }
        }
        return SupportSpace(b.n_qubits, std::move(all));
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return idx_.size(); }
    [[nodiscard]] const std::vector<Index> &indices() const { return idx_; }
    [[nodiscard]] std::int32_t position(Index i) const { return pos_[i]; }

    /// Amplitudes on S; `dropped` receives the norm of the discarded part.
    [[nodiscard]] RestrictedVector restrict(const StateVector &psi,
                                            double *dropped = nullptr) const {
        if (psi.num_qubits() != n_) {
            throw std::invalid_argument("state register does not match the support");
        }
        RestrictedVector out(static_cast<Eigen::Index>(idx_.size()));
        double total = 0.0;
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            out[static_cast<Eigen::Index>(p)] = psi[idx_[p]];
        }
        for (Index i = 0; i < psi.dim(); ++i) {
            total += std::norm(psi[i]);
        }
        if (dropped != nullptr) {
            *dropped = std::sqrt(std::max(0.0, total - out.squaredNorm()));
        }
        return out;
    }

    [[nodiscard]] StateVector expand(const RestrictedVector &v) const {
        StateVector out(n_);
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            out[idx_[p]] = v[static_cast<Eigen::Index>(p)];
        }
        return out;
    }

    /// P_S M P_S v for a local matrix M on `targets` (targets[0] is the MSB).
    [[nodiscard]] RestrictedVector apply(const Matrix &m, const std::vector<int> &targets,
                                         const RestrictedVector &v) const {
        const auto k = static_cast<int>(targets.size());
        const int dim = 1 << k;
        if (m.rows() != dim || m.cols() != dim) {
            throw std::invalid_argument("local matrix does not match targets");
        }
        check_targets(targets, n_);
        std::vector<Index> off(static_cast<std::size_t>(dim), 0);
        Index mask = 0;
        for (int j = 0; j < dim; ++j) {
            for (int b = 0; b < k; ++b) {
                if ((j >> (k - 1 - b)) & 1) {
                    off[static_cast<std::size_t>(j)] |= Index{1} << targets[static_cast<std::size_t>(b)];
                }
            }
        }
        for (int t : targets) {
            mask |= Index{1} << t;
        }
        // Nonzeros of each column, so every input amplitude scatters once.
        std::vector<std::vector<std::pair<int, cplx>>> col(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) {
            for (int r = 0; r < dim; ++r) {
                if (m(r, c) != cplx{0, 0}) {
                    col[static_cast<std::size_t>(c)].emplace_back(r, m(r, c));
                }
            }
        }
        RestrictedVector out = RestrictedVector::Zero(v.size());
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            const cplx a = v[static_cast<Eigen::Index>(p)];
            if (a == cplx{0, 0}) {
                continue;
            }
            const Index s = idx_[p];
            int c = 0;
            for (int b = 0; b < k; ++b) {
                c = (c << 1) | static_cast<int>((s >> targets[static_cast<std::size_t>(b)]) & 1u);
            }
            const Index base = s & ~mask;
            for (const auto &[r, val] : col[static_cast<std::size_t>(c)]) {
                const std::int32_t q = pos_[base | off[static_cast<std::size_t>(r)]];
                if (q >= 0) {
                    out[q] += val * a;
                }
            }
        }
        return out;
    }

    /// P_S O P_S as a sparse matrix; exact on the subspace when O preserves it.
    [[nodiscard]] Eigen::SparseMatrix<cplx> restrict_operator(const PauliSum &o) const {
        if (static_cast<int>(o.num_qubits()) != n_) {
            throw std::invalid_argument("operator register does not match the support");
        }
        std::vector<Eigen::Triplet<cplx>> trips;
        for (const PauliTerm &t : o.terms()) {
            const Index x = t.string.x_mask();
            const Index z = t.string.z_mask();
            const int ph = t.string.phase_exponent() + t.string.y_count();
            for (std::size_t p = 0; p < idx_.size(); ++p) {
                const std::int32_t q = pos_[idx_[p] ^ x];
                if (q >= 0) {
                    trips.emplace_back(q, static_cast<int>(p),
                                       t.coefficient * pauli_phase(ph, idx_[p], z));
                }
            }
        }
        const auto d = static_cast<Eigen::Index>(idx_.size());
        Eigen::SparseMatrix<cplx> out(d, d);
        out.setFromTriplets(trips.begin(), trips.end());
        return out;
    }

  private:
    int n_ = 0;
    std::vector<Index> idx_;
    std::vector<std::int32_t> pos_;
};

/// Embeds a gate matrix on `gate_targets` into the block register `block` (block[0] MSB).
[[nodiscard]] inline Matrix embed_local(const Matrix &g, const std::vector<int> &gate_targets,
                                        const std::vector<int> &block) {
    const int k = static_cast<int>(block.size());
    const int kg = static_cast<int>(gate_targets.size());
    std::vector<int> bit(static_cast<std::size_t>(kg));
    int gmask = 0;
    for (int j = 0; j < kg; ++j) {
        const auto it = std::find(block.begin(), block.end(), gate_targets[static_cast<std::size_t>(j)]);
        if (it == block.end()) {
            throw std::invalid_argument("gate target outside the block");
        }
        bit[static_cast<std::size_t>(j)] = k - 1 - static_cast<int>(it - block.begin());
        gmask |= 1 << bit[static_cast<std::size_t>(j)];
    }
    auto gather = [&](int c) {
        int out = 0;
        for (int j = 0; j < kg; ++j) {
            out = (out << 1) | ((c >> bit[static_cast<std::size_t>(j)]) & 1);
        }
        return out;
    };
    auto scatter = [&](int gi) {
        int out = 0;
        for (int j = 0; j < kg; ++j) {
            if ((gi >> (kg - 1 - j)) & 1) {
                out |= 1 << bit[static_cast<std::size_t>(j)];
            }
        }
        return out;
    };
    const int dim = 1 << k;
    Matrix e = Matrix::Zero(dim, dim);
    for (int c = 0; c < dim; ++c) {
        const int gc = gather(c);
        const int rest = c & ~gmask;
        for (int gr = 0; gr < (1 << kg); ++gr) {
            const cplx val = g(gr, gc);
            if (val != cplx{0, 0}) {
                e(rest | scatter(gr), c) = val;
            }
        }
    }
    return e;
}

/**
 * A circuit split at its block boundaries. Each block acts on at most four
 * qubits; runs of unparametrized gates inside a block are pre-multiplied.
 */
class BlockProgram {
  public:
    struct Piece {
        Matrix fixed;            ///< used when gate_index < 0
        std::ptrdiff_t gate_index = -1;
    };
    struct Block {
        std::vector<int> targets;
        std::vector<Piece> pieces; ///< time order
    };
    struct Evaluated {
        Matrix u;
        std::vector<std::pair<int, Matrix>> derivatives; ///< (slot, dU/dparam)
    };

    BlockProgram() = default;
    explicit BlockProgram(const Circuit &c) : circuit_(c) {
        const auto &ends = c.block_ends();
        if (ends.empty() || ends.back() != c.size()) {
            throw std::invalid_argument("circuit blocks must cover every gate");
        }
        std::size_t start = 0;
        for (std::size_t end : ends) {
            Block b;
            for (std::size_t i = start; i < end; ++i) {
                for (int q : c.gates()[i].targets) {
                    if (std::find(b.targets.begin(), b.targets.end(), q) == b.targets.end()) {
                        b.targets.push_back(q);
                    }
                }
            }
            if (b.targets.size() > 4) {
                throw std::invalid_argument("circuit block acts on more than four qubits");
            }
            std::sort(b.targets.begin(), b.targets.end());
            const auto dim = Eigen::Index{1} << b.targets.size();
            Matrix run = Matrix::Identity(dim, dim);
            bool open = false;
            for (std::size_t i = start; i < end; ++i) {
                const Gate &g = c.gates()[i];
                const bool param = std::any_of(g.slots.begin(), g.slots.end(),
                                               [](const ParamSlot &s) { return s.slot >= 0; });
                if (param) {
                    if (open) {
                        b.pieces.push_back({run, -1});
                        run = Matrix::Identity(dim, dim);
                        open = false;
                    }
                    b.pieces.push_back({Matrix(), static_cast<std::ptrdiff_t>(i)});
                } else {
                    run = embed_local(gate_matrix(g), g.targets, b.targets) * run;
                    open = true;
                }
            }
            if (open) {
                b.pieces.push_back({run, -1});
            }
            blocks_.push_back(std::move(b));
            start = end;
        }
    }

    [[nodiscard]] std::size_t size() const { return blocks_.size(); }
    [[nodiscard]] const Block &block(std::size_t i) const { return blocks_[i]; }
    [[nodiscard]] int num_parameters() const { return circuit_.num_parameters(); }

    /// Block unitary and, if requested, its derivative for every bound slot.
    [[nodiscard]] Evaluated evaluate(std::size_t i, const std::vector<double> &params,
                                     bool with_derivatives) const {
        const Block &b = blocks_[i];
        const std::size_t m = b.pieces.size();
        std::vector<Matrix> mats(m);
        std::vector<Gate> bound_gates(m);
        for (std::size_t j = 0; j < m; ++j) {
            const Piece &p = b.pieces[j];
            if (p.gate_index < 0) {
                mats[j] = p.fixed;
                continue;
            }
            Gate g = circuit_.gates()[static_cast<std::size_t>(p.gate_index)];
            for (std::size_t k = 0; k < g.slots.size(); ++k) {
                if (g.slots[k].slot >= 0) {
                    g.params[k] = g.slots[k].scale * params[static_cast<std::size_t>(g.slots[k].slot)];
                }
            }
            mats[j] = embed_local(gate_matrix(g), g.targets, b.targets);
            bound_gates[j] = std::move(g);
        }
        const auto dim = Eigen::Index{1} << b.targets.size();
        // prefix[j] = P_{j-1} ... P_0
        std::vector<Matrix> prefix(m + 1);
        prefix[0] = Matrix::Identity(dim, dim);
        for (std::size_t j = 0; j < m; ++j) {
            prefix[j + 1] = mats[j] * prefix[j];
        }
        Evaluated out;
        out.u = prefix[m];
        if (!with_derivatives) {
            return out;
        }
        Matrix suffix = Matrix::Identity(dim, dim); // P_{m-1} ... P_{j+1}
        for (std::size_t jj = m; jj-- > 0;) {
            const Piece &p = b.pieces[jj];
            if (p.gate_index >= 0) {
                const Gate &g = bound_gates[jj];
                for (std::size_t k = 0; k < g.slots.size(); ++k) {
                    if (g.slots[k].slot < 0) {
                        continue;
                    }
                    const Matrix d = embed_local(gate_derivative(g, k), g.targets, b.targets);
                    Matrix term = g.slots[k].scale * (suffix * d * prefix[jj]);
                    auto it = std::find_if(out.derivatives.begin(), out.derivatives.end(),
                                           [&](const auto &e) { return e.first == g.slots[k].slot; });
                    if (it == out.derivatives.end()) {
                        out.derivatives.emplace_back(g.slots[k].slot, std::move(term));
                    } else {
                        it->second += term;
                    }
                }
            }
            suffix = suffix * mats[jj];
        }
        return out;
    }

  private:
    Circuit circuit_;
    std::vector<Block> blocks_;
};

} // namespace f2q
