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
 * Krylov (Lanczos) approximation of exp(-i H tau)|psi> with adaptive substeps.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pauli.hpp"
#include "state.hpp"

namespace f2q {

struct KrylovOptions {
    int max_dimension = 40;
    double tolerance = 1e-12; ///< local error budget per unit time
    int max_substeps = 100000;
};

/**
 * exp(-i H tau) v for Hermitian H given as a matvec on std::vector<cplx>.
 * Each substep builds one Lanczos basis and picks the largest step whose
 * a-posteriori error estimate fits the budget.
 */
template <class MatVec>
[[nodiscard]] std::vector<cplx> krylov_expm(const MatVec &matvec, std::vector<cplx> v,
                                            double tau, const KrylovOptions &opt = {}) {
    const std::size_t n = v.size();
    double start_norm = 0.0;
    for (const cplx &a : v) {
        start_norm += std::norm(a);
    }
    start_norm = std::sqrt(start_norm);
    if (tau == 0.0 || start_norm == 0.0) {
        return v;
    }
    const double sign = tau < 0 ? -1.0 : 1.0;
    double remaining = std::abs(tau);
    double step = remaining;
    int substeps = 0;
    while (remaining > 0.0) {
        if (++substeps > opt.max_substeps) {
            throw std::runtime_error("Krylov propagation exceeded the substep budget");
        }
        double beta0 = 0.0;
        for (const cplx &a : v) {
            beta0 += std::norm(a);
        }
        beta0 = std::sqrt(beta0);
        std::vector<std::vector<cplx>> basis;
        std::vector<double> alpha;
        std::vector<double> beta;
        basis.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) {
            basis[0][i] = v[i] / beta0;
        }
        double tail = 0.0;
        for (int j = 0; j < opt.max_dimension; ++j) {
            std::vector<cplx> w = matvec(basis.back());
            cplx a{0, 0};
            for (std::size_t i = 0; i < n; ++i) {
                a += std::conj(basis.back()[i]) * w[i];
            }
            alpha.push_back(a.real());
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &b : basis) {
                    cplx c{0, 0};
                    for (std::size_t i = 0; i < n; ++i) {
                        c += std::conj(b[i]) * w[i];
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        w[i] -= c * b[i];
                    }
                }
            }
            double bn = 0.0;
            for (const cplx &x : w) {
                bn += std::norm(x);
            }
            bn = std::sqrt(bn);
            tail = bn;
            if (bn < 1e-13 || j + 1 == opt.max_dimension) {
                break;
            }
            beta.push_back(bn);
            for (cplx &x : w) {
                x /= bn;
            }
            basis.push_back(std::move(w));
        }
        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        auto coeffs = [&](double dt) {
            Eigen::VectorXcd d(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                d[i] = std::exp(cplx{0, -sign * dt * es.eigenvalues()[i]}) *
                       es.eigenvectors()(0, i);
            }
            return Eigen::VectorXcd(es.eigenvectors().cast<cplx>() * d);
        };
        step = std::min(step, remaining);
        Eigen::VectorXcd y;
        for (;;) {
            y = coeffs(step);
            const double err = beta0 * tail * std::abs(y[m - 1]);
            if (tail < 1e-13 || err <= opt.tolerance * std::max(step, 1e-3)) {
                break;
            }
            step *= 0.5;
            if (step < 1e-14 * std::abs(tau)) {
                throw std::runtime_error("Krylov propagation failed to converge");
            }
        }
        std::fill(v.begin(), v.end(), cplx{0, 0});
        for (Eigen::Index k = 0; k < m; ++k) {
            const cplx c = beta0 * y[k];
            const auto &b = basis[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < n; ++i) {
                v[i] += c * b[i];
            }
        }
        remaining -= step;
        if (remaining < 1e-15 * std::abs(tau)) {
            remaining = 0.0;
        }
        step *= 1.5;
    }
    double end_norm = 0.0;
    for (const cplx &a : v) {
        end_norm += std::norm(a);
    }
    end_norm = std::sqrt(end_norm);
    if (std::abs(end_norm - start_norm) > 1e-10 * start_norm) {
        throw std::runtime_error("Krylov propagation lost unitarity");
    }
    return v;
}

/// exp(-i H tau)|psi> on a dense register.
[[nodiscard]] inline StateVector exact_propagate(const StateVector &psi, const PauliSum &h,
                                                 double tau, const KrylovOptions &opt = {}) {
    if (static_cast<int>(h.num_qubits()) != psi.num_qubits()) {
        throw std::invalid_argument("operator register size mismatch");
    }
    if (!h.is_hermitian()) {
        throw std::invalid_argument("propagation requires a Hermitian generator");
    }
    const GroupedSum gs(h);
    const int nq = psi.num_qubits();
    auto matvec = [&gs, nq](const std::vector<cplx> &x) {
        StateVector in(nq);
        in.data() = x;
        return apply_sum(gs, in).data();
    };
    StateVector out(nq);
    out.data() = krylov_expm(matvec, psi.data(), tau, opt);
    return out;
}

} // namespace f2q
