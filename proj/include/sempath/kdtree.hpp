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

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sempath/types.hpp"

namespace sempath {

/// Squared Euclidean distance accumulated dimension by dimension in double,
/// so results are bit-identical to a naive loop over the same rows.
template <typename DerivedA, typename DerivedB>
double squared_distance(const Eigen::MatrixBase<DerivedA>& a,
                        const Eigen::MatrixBase<DerivedB>& b) {
    double acc = 0.0;
    for (Eigen::Index d = 0; d < a.size(); ++d) {
        const double diff = static_cast<double>(a(d)) - static_cast<double>(b(d));
        acc += diff * diff;
    }
    return acc;
}

/// Exact nearest-neighbour index over a fixed point set.  Queries refer to
/// in-tree points by row index; the query point itself is excluded.  Distance
/// ties are broken toward the smaller point index.  The tree only references
/// the point matrix, which must outlive it.  Queries are const and safe to
/// run concurrently.
template <typename Scalar>
class KdTree {
public:
    using Points = RowMatrixX<Scalar>;
    using Neighbor = std::pair<double, Eigen::Index>;  // (squared distance, index)

    explicit KdTree(const Points& points, Eigen::Index leaf_size = 16)
        : points_(points), leaf_size_(std::max<Eigen::Index>(leaf_size, 1)) {
        const auto n = points_.rows();
        perm_.resize(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) perm_[static_cast<std::size_t>(i)] = i;
        if (n > 0) build(0, n);
    }

    Eigen::Index size() const { return points_.rows(); }

    /// k nearest other points as (squared distance, index), ascending.
    void knn(Eigen::Index query, int k, std::vector<Neighbor>& out) const {
        if (k < 1 || static_cast<Eigen::Index>(k) >= size())
            throw std::invalid_argument("knn: require 1 <= k < number of points");
        out.clear();
        search_knn(0, query, static_cast<std::size_t>(k), out);
        std::sort(out.begin(), out.end());
    }

    /// All other points with squared distance <= max_sqdist, sorted by index.
    void radius_search(Eigen::Index query, double max_sqdist,
                       std::vector<Eigen::Index>& out) const {
        out.clear();
        search_radius(0, query, max_sqdist, out);
        std::sort(out.begin(), out.end());
    }

private:
    struct Node {
        Eigen::Index begin = 0, end = 0;  // range in perm_ (leaves only)
        int split_dim = -1;               // -1 marks a leaf
        double split_value = 0.0;
        int left = -1, right = -1;
    };

    int build(Eigen::Index begin, Eigen::Index end) {
        const int node_id = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        if (end - begin <= leaf_size_) {
            nodes_[node_id].begin = begin;
            nodes_[node_id].end = end;
            return node_id;
        }
        // Split on the dimension with the widest extent.
        const Eigen::Index dims = points_.cols();
        int best_dim = 0;
        double best_extent = -1.0;
        for (Eigen::Index d = 0; d < dims; ++d) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (Eigen::Index i = begin; i < end; ++i) {
                const double v = static_cast<double>(points_(perm_[static_cast<std::size_t>(i)], d));
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (hi - lo > best_extent) {
                best_extent = hi - lo;
                best_dim = static_cast<int>(d);
            }
        }
        const Eigen::Index mid = begin + (end - begin) / 2;
        std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end,
                         [&](Eigen::Index a, Eigen::Index b) {
                             const double va = static_cast<double>(points_(a, best_dim));
                             const double vb = static_cast<double>(points_(b, best_dim));
                             if (va != vb) return va < vb;
                             return a < b;
                         });
        const double split_value =
            static_cast<double>(points_(perm_[static_cast<std::size_t>(mid)], best_dim));
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[node_id].split_dim = best_dim;
        nodes_[node_id].split_value = split_value;
        nodes_[node_id].left = left;
        nodes_[node_id].right = right;
        return node_id;
    }

    static bool heap_less(const Neighbor& a, const Neighbor& b) { return a < b; }

    void consider(Eigen::Index query, Eigen::Index candidate, std::size_t k,
                  std::vector<Neighbor>& heap) const {
        if (candidate == query) return;
        const Neighbor entry{squared_distance(points_.row(query), points_.row(candidate)),
                             candidate};
        if (heap.size() < k) {
            heap.push_back(entry);
            std::push_heap(heap.begin(), heap.end(), heap_less);
        } else if (entry < heap.front()) {
            std::pop_heap(heap.begin(), heap.end(), heap_less);
            heap.back() = entry;
            std::push_heap(heap.begin(), heap.end(), heap_less);
        }
    }

    void search_knn(int node_id, Eigen::Index query, std::size_t k,
                    std::vector<Neighbor>& heap) const {
        const Node& node = nodes_[node_id];
        if (node.split_dim < 0) {
            for (Eigen::Index i = node.begin; i < node.end; ++i)
                consider(query, perm_[static_cast<std::size_t>(i)], k, heap);
            return;
        }
        const double q = static_cast<double>(points_(query, node.split_dim));
        const double delta = q - node.split_value;
        const int near = delta < 0.0 ? node.left : node.right;
        const int far = delta < 0.0 ? node.right : node.left;
        search_knn(near, query, k, heap);
        const double worst =
            heap.size() < k ? std::numeric_limits<double>::infinity() : heap.front().first;
        if (delta * delta <= worst) search_knn(far, query, k, heap);
    }

    void search_radius(int node_id, Eigen::Index query, double max_sqdist,
                       std::vector<Eigen::Index>& out) const {
        const Node& node = nodes_[node_id];
        if (node.split_dim < 0) {
            for (Eigen::Index i = node.begin; i < node.end; ++i) {
                const Eigen::Index candidate = perm_[static_cast<std::size_t>(i)];
                if (candidate == query) continue;
                if (squared_distance(points_.row(query), points_.row(candidate)) <= max_sqdist)
                    out.push_back(candidate);
            }
            return;
        }
        const double q = static_cast<double>(points_(query, node.split_dim));
        const double delta = q - node.split_value;
        const int near = delta < 0.0 ? node.left : node.right;
        const int far = delta < 0.0 ? node.right : node.left;
        search_radius(near, query, max_sqdist, out);
        if (delta * delta <= max_sqdist) search_radius(far, query, max_sqdist, out);
    }

    const Points& points_;
    Eigen::Index leaf_size_;
    std::vector<Eigen::Index> perm_;
    std::vector<Node> nodes_;
};

}  // namespace sempath
