/*
 * Copyright 2026 The sempath authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace sempath {

struct TruncatedSvd {
    Eigen::MatrixXd U;  // rows x rank, orthonormal columns
    Eigen::VectorXd singular_values;  // non-negative, non-increasing
    Eigen::MatrixXd V;  // cols x rank
};

namespace detail {

inline Eigen::MatrixXd thin_q(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// Deterministic sign convention: the largest-magnitude entry of each left
// singular vector is made positive (first such entry on ties).
inline void fix_signs(Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        Eigen::Index argmax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const double a = std::abs(u(i, j));
            if (a > best) { best = a; argmax = i; }
        }
        if (u(argmax, j) < 0.0) {
            u.col(j) = -u.col(j);
            v.col(j) = -v.col(j);
        }
    }
}

}  // namespace detail

/// Rank-`rank` truncated SVD by randomized subspace iteration.  Works for any
/// Eigen matrix type (dense or sparse) that supports products with dense
/// matrices.  Deterministic for a fixed seed; more power iterations refine
/// the captured subspace.
template <typename MatrixLike>
TruncatedSvd truncated_svd(const MatrixLike& a, Eigen::Index rank, int power_iters,
                           std::uint64_t seed, Eigen::Index oversample = 10) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    const Eigen::Index min_dim = std::min(rows, cols);
    if (rank < 1 || rank > min_dim)
        throw std::invalid_argument("truncated_svd: rank must be in [1, min(rows, cols)]");
    if (power_iters < 0) throw std::invalid_argument("truncated_svd: power_iters must be >= 0");

    const Eigen::Index ell = std::min(min_dim, rank + oversample);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd omega(cols, ell);
    for (Eigen::Index i = 0; i < cols; ++i)
        for (Eigen::Index j = 0; j < ell; ++j) omega(i, j) = gauss(rng);

    Eigen::MatrixXd q = detail::thin_q(a * omega);
    for (int it = 0; it < power_iters; ++it) {
        const Eigen::MatrixXd z = detail::thin_q(a.transpose() * q);
        q = detail::thin_q(a * z);
    }

    const Eigen::MatrixXd b = q.transpose() * a;  // ell x cols
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);

    TruncatedSvd result;
    result.U = q * svd.matrixU().leftCols(rank);
    result.singular_values = svd.singularValues().head(rank);
    result.V = svd.matrixV().leftCols(rank);
    detail::fix_signs(result.U, result.V);
    return result;
}

}  // namespace sempath
