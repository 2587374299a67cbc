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

#include "sempath/cluster_metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sempath/kdtree.hpp"
#include "sempath/parallel.hpp"

namespace sempath {

std::vector<ClusterSummary> summarize_clusters(const RowMatrixXf& points,
                                               const std::vector<std::uint32_t>& multiplicity,
                                               const std::vector<int>& labels) {
    if (labels.size() != static_cast<std::size_t>(points.rows()) ||
        labels.size() != multiplicity.size())
        throw std::invalid_argument("summarize_clusters: size mismatch");
    int num_clusters = 0;
    for (const int l : labels) num_clusters = std::max(num_clusters, l);
    if (num_clusters == 0) throw std::runtime_error("no clusters");

    std::vector<ClusterSummary> summaries(static_cast<std::size_t>(num_clusters));
    for (int c = 0; c < num_clusters; ++c) {
        summaries[static_cast<std::size_t>(c)].id = c + 1;
        summaries[static_cast<std::size_t>(c)].centroid =
            Eigen::RowVectorXd::Zero(points.cols());
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int l = labels[i];
        if (l == 0) continue;
        ClusterSummary& s = summaries[static_cast<std::size_t>(l - 1)];
        s.members.push_back(static_cast<Eigen::Index>(i));
        s.n_unique += 1;
        s.n_weighted += multiplicity[i];
        s.centroid += points.row(static_cast<Eigen::Index>(i)).cast<double>();
    }
    for (auto& s : summaries) {
        if (s.n_unique == 0)
            throw std::invalid_argument("summarize_clusters: cluster ids must be contiguous");
        s.centroid /= static_cast<double>(s.n_unique);
    }
    return summaries;
}

namespace {

// Pairwise max/sum of distances within one cluster.  Fixed-size row chunks
// keep the reduction order independent of the worker count.
void pairwise_stats(const RowMatrixXf& points, const std::vector<Eigen::Index>& members,
                    double& max_dist, double& mean_dist) {
    const std::size_t m = members.size();
    if (m < 2) {
        max_dist = 0.0;
        mean_dist = 0.0;
        return;
    }
    constexpr std::size_t kChunk = 128;
    const std::size_t num_chunks = (m + kChunk - 1) / kChunk;
    std::vector<double> chunk_max(num_chunks, 0.0);
    std::vector<double> chunk_sum(num_chunks, 0.0);
    parallel_chunks(m, kChunk, [&](std::size_t begin, std::size_t end) {
        const std::size_t chunk_id = begin / kChunk;
        double local_max = 0.0;
        double local_sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const auto row_i = points.row(members[i]);
            for (std::size_t j = i + 1; j < m; ++j) {
                const double d = std::sqrt(squared_distance(row_i, points.row(members[j])));
                local_sum += d;
                if (d > local_max) local_max = d;
            }
        }
        chunk_max[chunk_id] = local_max;
        chunk_sum[chunk_id] = local_sum;
    });
    double total = 0.0;
    double best = 0.0;
    for (std::size_t c = 0; c < num_chunks; ++c) {
        total += chunk_sum[c];
        if (chunk_max[c] > best) best = chunk_max[c];
    }
    max_dist = best;
    // Ordered pairs: each unordered pair counts twice.
    mean_dist = 2.0 * total / (static_cast<double>(m) * static_cast<double>(m - 1));
}

}  // namespace

MetricArrays metric_arrays(const std::vector<ClusterSummary>& summaries,
                           const RowMatrixXf& points) {
    if (summaries.empty()) throw std::invalid_argument("metric_arrays: no summaries");
    const auto nc = static_cast<Eigen::Index>(summaries.size());
    MetricArrays arrays;
    for (auto& v : arrays.xi) v = Eigen::VectorXd::Zero(nc);

    double max_unique = 0.0, sum_unique = 0.0;
    double max_weighted = 0.0, sum_weighted = 0.0;
    for (const auto& s : summaries) {
        max_unique = std::max(max_unique, static_cast<double>(s.n_unique));
        sum_unique += static_cast<double>(s.n_unique);
        max_weighted = std::max(max_weighted, static_cast<double>(s.n_weighted));
        sum_weighted += static_cast<double>(s.n_weighted);
    }

    for (Eigen::Index c = 0; c < nc; ++c) {
        const ClusterSummary& s = summaries[static_cast<std::size_t>(c)];
        arrays.xi[0](c) = static_cast<double>(s.n_unique) / max_unique;
        arrays.xi[1](c) = static_cast<double>(s.n_unique) / sum_unique;
        arrays.xi[2](c) = static_cast<double>(s.n_weighted) / max_weighted;
        arrays.xi[3](c) = static_cast<double>(s.n_weighted) / sum_weighted;

        double max_to_centroid = 0.0;
        double sum_to_centroid = 0.0;
        for (const Eigen::Index m : s.members) {
            const double d =
                std::sqrt((points.row(m).cast<double>() - s.centroid).squaredNorm());
            sum_to_centroid += d;
            if (d > max_to_centroid) max_to_centroid = d;
        }
        arrays.xi[4](c) = max_to_centroid;
        arrays.xi[5](c) = sum_to_centroid / static_cast<double>(s.n_unique);

        double max_pair = 0.0, mean_pair = 0.0;
        pairwise_stats(points, s.members, max_pair, mean_pair);
        arrays.xi[6](c) = max_pair;
        arrays.xi[7](c) = mean_pair;
    }
    return arrays;
}

void MetricArrays::save_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "cluster_id,xi1,xi2,xi3,xi4,xi5,xi6,xi7,xi8\n";
    char buf[64];
    for (Eigen::Index c = 0; c < xi[0].size(); ++c) {
        out << (c + 1);
        for (const auto& v : xi) {
            std::snprintf(buf, sizeof buf, "%.9g", v(c));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace sempath
