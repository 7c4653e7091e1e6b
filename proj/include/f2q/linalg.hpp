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
 * Small eigen-solvers shared by the encoded-space and fermionic routes.
 */
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace f2q {

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXcd vector;
};

struct LanczosOptions {
    double tol = 1e-10;
    int max_iterations = 500;
    unsigned seed = 7;
};

/**
 * Lowest eigenpair of a Hermitian operator given as a matvec, by Lanczos
 * with full reorthogonalization. Converged when the Ritz residual
 * |beta_m * s_m| drops below tol.
 */
[[nodiscard]] inline EigenPair lanczos_lowest(
    const std::function<Eigen::VectorXcd(const Eigen::VectorXcd &)> &matvec,
    Eigen::Index dim, const LanczosOptions &opt = {}) {
    if (dim <= 0) {
        throw std::invalid_argument("Lanczos on an empty space");
    }
    std::mt19937 rng(opt.seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = {gauss(rng), gauss(rng)};
    }
    v.normalize();

    const int max_m = static_cast<int>(std::min<Eigen::Index>(opt.max_iterations, dim));
    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.push_back(v);
    for (int j = 0; j < max_m; ++j) {
        Eigen::VectorXcd w = matvec(basis[static_cast<std::size_t>(j)]);
        alpha.push_back(basis[static_cast<std::size_t>(j)].dot(w).real());
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &b : basis) {
                w -= b * b.dot(w);
            }
        }
        const double b = w.norm();

        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double residual = std::abs(b * es.eigenvectors()(m - 1, 0));
        if (residual < opt.tol || b < 1e-14 || j + 1 == max_m) {
            if (residual >= opt.tol && b >= 1e-14) {
                throw std::runtime_error("Lanczos did not converge");
            }
            EigenPair out;
            out.value = es.eigenvalues()(0);
            out.vector = Eigen::VectorXcd::Zero(dim);
            for (Eigen::Index i = 0; i < m; ++i) {
                out.vector += basis[static_cast<std::size_t>(i)] * es.eigenvectors()(i, 0);
            }
            out.vector.normalize();
            return out;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    throw std::runtime_error("Lanczos did not converge");
}

/// Lowest eigenpair of a dense Hermitian matrix.
[[nodiscard]] inline EigenPair dense_lowest(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("dense eigensolver failed");
    }
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

inline constexpr Eigen::Index kDenseEigenLimit = 2048;

/// Dense solve up to kDenseEigenLimit, Lanczos beyond.
[[nodiscard]] inline EigenPair lowest_eigenpair(const Eigen::MatrixXcd &h) {
    if (h.rows() <= kDenseEigenLimit) {
        return dense_lowest(h);
    }
    return lanczos_lowest([&h](const Eigen::VectorXcd &x) -> Eigen::VectorXcd { return h * x; },
                          h.rows());
}

} // namespace f2q
