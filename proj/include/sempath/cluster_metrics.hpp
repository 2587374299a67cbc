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
#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "sempath/ngram.hpp"
#include "sempath/types.hpp"
#include "sempath/wishart.hpp"

namespace sempath {

/// Per-cluster tallies: unique point count, multiplicity-weighted count and
/// the unweighted centroid of the unique member vectors.
struct ClusterSummary {
    int id = 0;
    std::int64_t n_unique = 0;
    std::int64_t n_weighted = 0;
    Eigen::RowVectorXd centroid;
    std::vector<Eigen::Index> members;
};

/// The eight per-cluster metric arrays, index-aligned to cluster ids
/// (noise excluded):
///   1  n_i / max_j n_j            2  n_i / sum_j n_j
///   3  nw_i / max_j nw_j          4  nw_i / sum_j nw_j
///   5  max distance to centroid   6  mean distance to centroid
///   7  max pairwise distance      8  mean pairwise distance
/// Distances are Euclidean over unique points; singleton clusters score 0 on
/// metrics 5-8.
struct MetricArrays {
    std::array<Eigen::VectorXd, 8> xi;

    int num_clusters() const { return static_cast<int>(xi[0].size()); }

    // CSV: cluster_id,xi1,...,xi8
    void save_csv(const std::filesystem::path& file) const;
};

std::vector<ClusterSummary> summarize_clusters(const RowMatrixXf& points,
                                               const std::vector<std::uint32_t>& multiplicity,
                                               const std::vector<int>& labels);

inline std::vector<ClusterSummary> summarize_clusters(const NgramDataset& dataset,
                                                      const Clustering& clustering) {
    return summarize_clusters(dataset.points, dataset.multiplicity, clustering.labels);
}

MetricArrays metric_arrays(const std::vector<ClusterSummary>& summaries,
                           const RowMatrixXf& points);

inline MetricArrays metric_arrays(const std::vector<ClusterSummary>& summaries,
                                  const NgramDataset& dataset) {
    return metric_arrays(summaries, dataset.points);
}

}  // namespace sempath
