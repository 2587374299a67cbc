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
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sempath/kdtree.hpp"
#include "sempath/parallel.hpp"
#include "sempath/types.hpp"

namespace sempath {

struct WishartParams {
    int k = 11;    // neighbour count for the density estimate
    double h = 0;  // significance threshold, density units
};

/// Result of one clustering run.  Labels use 0 for noise and 1..NC for
/// clusters; cluster ids are contiguous in first-creation order.
struct Clustering {
    std::vector<int> labels;
    int num_clusters = 0;
    Eigen::VectorXd densities;
    Eigen::VectorXd knn_radii;
    std::vector<bool> completed;  // per cluster id, index id-1
    WishartParams params;

    std::size_t size() const { return labels.size(); }
    double ratio_not_noise() const;

    // CSV: point_index,label,density,knn_radius (label 0 = noise).
    void save_csv(const std::filesystem::path& file) const;
    static Clustering load_csv(const std::filesystem::path& file);
};

struct ValidityScore {
    double ch = 0.0;
    double ratio_not_noise = 0.0;
    double T = 0.0;
    double ch_adj = 0.0;
};

/// ch_adj = ch * ratio_not_noise^T
ValidityScore ch_adjusted(double ch, const Clustering& clustering, double T);

// --- k-NN radii and densities -------------------------------------------

/// Squared distance from every point to its k-th nearest other point.
template <typename Scalar>
Eigen::VectorXd knn_sq_radii(const RowMatrixX<Scalar>& points, int k) {
    const Eigen::Index n = points.rows();
    if (k < 1 || static_cast<Eigen::Index>(k) >= n)
        throw std::invalid_argument("knn_radii: require 1 <= k < number of points");
    const KdTree<Scalar> tree(points);
    Eigen::VectorXd d2(n);
    parallel_chunks(static_cast<std::size_t>(n), 64, [&](std::size_t begin, std::size_t end) {
        std::vector<typename KdTree<Scalar>::Neighbor> buf;
        for (std::size_t i = begin; i < end; ++i) {
            tree.knn(static_cast<Eigen::Index>(i), k, buf);
            d2(static_cast<Eigen::Index>(i)) = buf.back().first;
        }
    });
    return d2;
}

/// Distance from every point to its k-th nearest other point.
template <typename Scalar>
Eigen::VectorXd knn_radii(const RowMatrixX<Scalar>& points, int k) {
    return knn_sq_radii(points, k).cwiseSqrt();
}

/// Sorted squared distances to the 1st..k_max-th nearest other point, one row
/// per point.  Lets a grid search reuse one pass for several k values.
template <typename Scalar>
RowMatrixXd knn_sq_distance_table(const RowMatrixX<Scalar>& points, int k_max) {
    const Eigen::Index n = points.rows();
    if (k_max < 1 || static_cast<Eigen::Index>(k_max) >= n)
        throw std::invalid_argument("knn table: require 1 <= k_max < number of points");
    const KdTree<Scalar> tree(points);
    RowMatrixXd table(n, k_max);
    parallel_chunks(static_cast<std::size_t>(n), 64, [&](std::size_t begin, std::size_t end) {
        std::vector<typename KdTree<Scalar>::Neighbor> buf;
        for (std::size_t i = begin; i < end; ++i) {
            tree.knn(static_cast<Eigen::Index>(i), k_max, buf);
            for (int j = 0; j < k_max; ++j)
                table(static_cast<Eigen::Index>(i), j) = buf[static_cast<std::size_t>(j)].first;
        }
    });
    return table;
}

/// Wishart's k-NN density estimate p = k / (N * V_dim(d)), with V_dim the
/// volume of the d-ball of the given radius.
double knn_density(double radius, int k, std::size_t n_points, int dim);

/// Vector form over squared radii (as produced by knn_sq_radii).
Eigen::VectorXd knn_density_from_sq(const Eigen::VectorXd& sq_radii, int k, int dim);

namespace detail {

// Squared clamp floor for coincident points: (1e-12 * bounding box diagonal)^2.
template <typename Scalar>
double coincident_floor_sq(const RowMatrixX<Scalar>& points) {
    double diag_sq = 0.0;
    for (Eigen::Index d = 0; d < points.cols(); ++d) {
        const double lo = static_cast<double>(points.col(d).minCoeff());
        const double hi = static_cast<double>(points.col(d).maxCoeff());
        diag_sq += (hi - lo) * (hi - lo);
    }
    return 1e-24 * diag_sq;
}

}  // namespace detail

// --- the clustering pass --------------------------------------------------

/// Sequential mode analysis: points are processed in order of ascending k-NN
/// radius (descending density).  Each point connects to the already-processed
/// points within its own radius.  A cluster whose density spread reaches h is
/// significant; when two significant clusters meet, both are frozen
/// (completed) and the meeting point becomes noise, while insignificant live
/// clusters dissolve into noise.  Otherwise the touched live clusters merge.
/// With h = 0 no cluster is ever significant, so contacts always merge: the
/// pass degenerates to agglomerative growth with no noise.
template <typename Scalar>
Clustering wishart_cluster(const RowMatrixX<Scalar>& points, const WishartParams& params,
                           const Eigen::VectorXd* precomputed_sq_radii = nullptr) {
    const Eigen::Index n = points.rows();
    const int dim = static_cast<int>(points.cols());
    if (n < 2) throw std::invalid_argument("wishart_cluster: need at least 2 points");
    if (params.k < 1 || static_cast<Eigen::Index>(params.k) >= n)
        throw std::invalid_argument("wishart_cluster: require 1 <= k < number of points");
    if (params.h < 0.0) throw std::invalid_argument("wishart_cluster: h must be >= 0");

    Eigen::VectorXd d2 =
        precomputed_sq_radii ? *precomputed_sq_radii : knn_sq_radii(points, params.k);
    const double floor_sq = detail::coincident_floor_sq(points);
    for (Eigen::Index i = 0; i < n; ++i) d2(i) = std::max(d2(i), floor_sq);
    const Eigen::VectorXd density = knn_density_from_sq(d2, params.k, dim);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (d2(a) != d2(b)) return d2(a) < d2(b);
        return a < b;
    });

    struct Record {
        int creation_id = 0;
        bool alive = false;
        bool completed = false;
        double p_min = 0.0, p_max = 0.0;
        std::vector<Eigen::Index> members;
    };

    constexpr int kUnprocessed = -1;
    constexpr int kNoise = 0;  // record handle offset: label = record index + 1
    std::vector<int> label(static_cast<std::size_t>(n), kUnprocessed);
    std::vector<Record> records;
    int next_creation_id = 0;

    const KdTree<Scalar> tree(points);
    std::vector<Eigen::Index> neighbors;
    std::vector<int> touched;

    const auto significant = [&](const Record& rec) {
        return params.h > 0.0 && rec.p_max - rec.p_min >= params.h;
    };

    for (const Eigen::Index x : order) {
        tree.radius_search(x, d2(x), neighbors);
        bool any_processed = false;
        touched.clear();
        for (const Eigen::Index nb : neighbors) {
            const int l = label[static_cast<std::size_t>(nb)];
            if (l == kUnprocessed) continue;
            any_processed = true;
            if (l > kNoise) touched.push_back(l - 1);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        if (!any_processed) {
            // Local density mode: open a new cluster.
            Record rec;
            rec.creation_id = next_creation_id++;
            rec.alive = true;
            rec.p_min = rec.p_max = density(x);
            rec.members.push_back(x);
            records.push_back(std::move(rec));
            label[static_cast<std::size_t>(x)] = static_cast<int>(records.size());
            continue;
        }
        if (touched.empty()) {
            // Only noise in reach; noise acts as a completed cluster.
            label[static_cast<std::size_t>(x)] = kNoise;
            continue;
        }
        if (touched.size() == 1) {
            Record& rec = records[static_cast<std::size_t>(touched[0])];
            if (rec.completed) {
                label[static_cast<std::size_t>(x)] = kNoise;
            } else {
                rec.members.push_back(x);
                rec.p_min = std::min(rec.p_min, density(x));
                rec.p_max = std::max(rec.p_max, density(x));
                label[static_cast<std::size_t>(x)] = touched[0] + 1;
            }
            continue;
        }

        bool all_completed = true;
        for (const int t : touched)
            if (!records[static_cast<std::size_t>(t)].completed) all_completed = false;
        if (all_completed) {
            label[static_cast<std::size_t>(x)] = kNoise;
            continue;
        }

        int significant_count = 0;
        for (const int t : touched)
            if (significant(records[static_cast<std::size_t>(t)])) ++significant_count;

        if (significant_count >= 2) {
            // Two or more modes meet: freeze them, drop the rest.
            label[static_cast<std::size_t>(x)] = kNoise;
            for (const int t : touched) {
                Record& rec = records[static_cast<std::size_t>(t)];
                if (significant(rec)) {
                    rec.completed = true;
                } else if (!rec.completed) {
                    for (const Eigen::Index m : rec.members)
                        label[static_cast<std::size_t>(m)] = kNoise;
                    rec.members.clear();
                    rec.alive = false;
                }
            }
            continue;
        }

        // Merge the live touched clusters (and x) into the significant one if
        // it can still grow, otherwise into the earliest-created live one.
        int target = -1;
        for (const int t : touched) {
            Record& rec = records[static_cast<std::size_t>(t)];
            if (rec.completed) continue;
            if (significant(rec)) {
                target = t;
                break;
            }
            if (target < 0 || rec.creation_id <
                                  records[static_cast<std::size_t>(target)].creation_id)
                target = t;
        }
        Record* into = &records[static_cast<std::size_t>(target)];
        for (const int t : touched) {
            if (t == target) continue;
            Record& rec = records[static_cast<std::size_t>(t)];
            if (rec.completed) continue;
            // Relabel the smaller member list; cluster identity follows the
            // merge target regardless of which record keeps the storage.
            int keep = target;
            int drop = t;
            if (records[static_cast<std::size_t>(keep)].members.size() <
                records[static_cast<std::size_t>(drop)].members.size()) {
                records[static_cast<std::size_t>(drop)].creation_id =
                    records[static_cast<std::size_t>(keep)].creation_id;
                std::swap(keep, drop);
            }
            Record& keep_rec = records[static_cast<std::size_t>(keep)];
            Record& drop_rec = records[static_cast<std::size_t>(drop)];
            for (const Eigen::Index m : drop_rec.members)
                label[static_cast<std::size_t>(m)] = keep + 1;
            keep_rec.members.insert(keep_rec.members.end(), drop_rec.members.begin(),
                                    drop_rec.members.end());
            keep_rec.p_min = std::min(keep_rec.p_min, drop_rec.p_min);
            keep_rec.p_max = std::max(keep_rec.p_max, drop_rec.p_max);
            drop_rec.members.clear();
            drop_rec.alive = false;
            target = keep;
            into = &keep_rec;
        }
        into->members.push_back(x);
        into->p_min = std::min(into->p_min, density(x));
        into->p_max = std::max(into->p_max, density(x));
        label[static_cast<std::size_t>(x)] = target + 1;
    }

    // Renumber surviving clusters 1..NC in first-creation order.
    std::vector<int> survivors;
    for (std::size_t r = 0; r < records.size(); ++r)
        if (records[r].alive && !records[r].members.empty()) survivors.push_back(static_cast<int>(r));
    std::sort(survivors.begin(), survivors.end(), [&](int a, int b) {
        return records[static_cast<std::size_t>(a)].creation_id <
               records[static_cast<std::size_t>(b)].creation_id;
    });

    Clustering result;
    result.params = params;
    result.num_clusters = static_cast<int>(survivors.size());
    result.labels.assign(static_cast<std::size_t>(n), 0);
    result.completed.resize(survivors.size());
    std::vector<int> remap(records.size(), 0);
    for (std::size_t j = 0; j < survivors.size(); ++j) {
        remap[static_cast<std::size_t>(survivors[j])] = static_cast<int>(j) + 1;
        result.completed[j] = records[static_cast<std::size_t>(survivors[j])].completed;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const int l = label[static_cast<std::size_t>(i)];
        result.labels[static_cast<std::size_t>(i)] = l > 0 ? remap[static_cast<std::size_t>(l - 1)] : 0;
    }
    result.densities = density;
    result.knn_radii = d2.cwiseSqrt();
    return result;
}

// --- Calinski-Harabasz ------------------------------------------------------

/// Between/within dispersion ratio over non-noise points, unweighted by
/// multiplicity.  Throws for fewer than two clusters; returns +infinity when
/// the within-cluster scatter is exactly zero.
template <typename Scalar>
double calinski_harabasz(const RowMatrixX<Scalar>& points, const std::vector<int>& labels) {
    const Eigen::Index n = points.rows();
    if (static_cast<std::size_t>(n) != labels.size())
        throw std::invalid_argument("calinski_harabasz: labels size mismatch");
    int num_clusters = 0;
    for (const int l : labels) num_clusters = std::max(num_clusters, l);
    if (num_clusters < 2)
        throw std::invalid_argument("calinski_harabasz: undefined for fewer than 2 clusters");

    const Eigen::Index dim = points.cols();
    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(num_clusters, dim);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(num_clusters);
    Eigen::RowVectorXd global = Eigen::RowVectorXd::Zero(dim);
    std::int64_t n_points = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        if (l == 0) continue;
        centroids.row(l - 1) += points.row(i).template cast<double>();
        counts(l - 1) += 1.0;
        global += points.row(i).template cast<double>();
        ++n_points;
    }
    for (int c = 0; c < num_clusters; ++c) {
        if (counts(c) == 0.0)
            throw std::invalid_argument("calinski_harabasz: empty cluster id");
        centroids.row(c) /= counts(c);
    }
    global /= static_cast<double>(n_points);

    double between = 0.0;
    for (int c = 0; c < num_clusters; ++c)
        between += counts(c) * (centroids.row(c) - global).squaredNorm();
    double within = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        if (l == 0) continue;
        within += (points.row(i).template cast<double>() - centroids.row(l - 1)).squaredNorm();
    }
    if (within == 0.0) return std::numeric_limits<double>::infinity();
    const double k = static_cast<double>(num_clusters);
    const double np = static_cast<double>(n_points);
    return (between / (k - 1.0)) / (within / (np - k));
}

// --- grid search ------------------------------------------------------------

struct GridCell {
    WishartParams params;
    int num_clusters = 0;
    double ratio_not_noise = 0.0;
    double ch = std::numeric_limits<double>::quiet_NaN();
    double ch_adj = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
};

struct TuneResult {
    WishartParams best;
    ValidityScore best_score;
    std::vector<GridCell> table;  // one row per (k, h), in grid order
};

void save_grid_csv(const std::vector<GridCell>& table, const std::filesystem::path& file);

/// Evaluates every (k, h) cell, maximising ch_adj; ties break toward smaller
/// k, then smaller h.  Cells where the index is undefined stay in the table
/// but never win.  Throws when no cell yields a valid clustering.
template <typename Scalar>
TuneResult tune_wishart(const RowMatrixX<Scalar>& points, const std::vector<int>& k_grid,
                        const std::vector<double>& h_grid, double T) {
    if (k_grid.empty() || h_grid.empty())
        throw std::invalid_argument("tune_wishart: grids must be non-empty");
    int k_max = 0;
    for (const int k : k_grid) k_max = std::max(k_max, k);
    RowMatrixXd sq_table;
    const bool table_ok = points.rows() > static_cast<Eigen::Index>(k_max);
    if (table_ok) sq_table = knn_sq_distance_table(points, k_max);

    TuneResult result;
    bool have_best = false;
    for (const int k : k_grid) {
        Eigen::VectorXd d2;
        if (table_ok && k >= 1) d2 = sq_table.col(k - 1);
        for (const double h : h_grid) {
            GridCell cell;
            cell.params = {k, h};
            try {
                const Clustering cl =
                    wishart_cluster<Scalar>(points, cell.params, table_ok && k >= 1 ? &d2 : nullptr);
                cell.num_clusters = cl.num_clusters;
                cell.ratio_not_noise = cl.ratio_not_noise();
                const double ch = calinski_harabasz(points, cl.labels);
                const ValidityScore score = ch_adjusted(ch, cl, T);
                cell.ch = score.ch;
                cell.ch_adj = score.ch_adj;
                cell.valid = true;
                const bool better =
                    !have_best || cell.ch_adj > result.best_score.ch_adj ||
                    (cell.ch_adj == result.best_score.ch_adj &&
                     (k < result.best.k || (k == result.best.k && h < result.best.h)));
                if (better) {
                    result.best = cell.params;
                    result.best_score = score;
                    have_best = true;
                }
            } catch (const std::exception&) {
                // Cell stays in the table as invalid.
            }
            result.table.push_back(cell);
        }
    }
    if (!have_best) throw std::runtime_error("tune_wishart: no valid clustering in grid");
    return result;
}

}  // namespace sempath
