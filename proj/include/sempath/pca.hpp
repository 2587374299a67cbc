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
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "sempath/types.hpp"

namespace sempath {

/// Projection onto the top-2 principal components of the centered points.
/// Sign convention: the largest-magnitude component of each axis is positive
/// (first such component on ties), so the output is deterministic.
template <typename Scalar>
Eigen::MatrixX2d pca_project_2d(const RowMatrixX<Scalar>& points) {
    const Eigen::Index n = points.rows();
    if (n < 2) throw std::invalid_argument("pca_project_2d: need at least 2 points");
    const Eigen::Index dim = points.cols();

    Eigen::MatrixXd centered = points.template cast<double>();
    const Eigen::RowVectorXd mean = centered.colwise().mean();
    centered.rowwise() -= mean;

    Eigen::MatrixX2d projection(n, 2);
    if (dim == 1) {
        projection.col(0) = centered.col(0);
        projection.col(1).setZero();
        return projection;
    }

    const Eigen::MatrixXd covariance =
        centered.transpose() * centered / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("pca_project_2d: eigendecomposition failed");

    // Eigenvalues come back ascending; take the last two columns.
    Eigen::MatrixXd axes(dim, 2);
    axes.col(0) = solver.eigenvectors().col(dim - 1);
    axes.col(1) = solver.eigenvectors().col(dim - 2);
    for (int j = 0; j < 2; ++j) {
        Eigen::Index argmax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double a = std::abs(axes(i, j));
            if (a > best) { best = a; argmax = i; }
        }
        if (axes(argmax, j) < 0.0) axes.col(j) = -axes.col(j);
    }
    projection = centered * axes;
    return projection;
}

/// CSV: x,y,label
void save_projection_csv(const Eigen::MatrixX2d& xy, const std::vector<int>& labels,
                         const std::filesystem::path& file);

}  // namespace sempath
