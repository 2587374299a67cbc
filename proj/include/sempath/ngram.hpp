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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sempath/embedding.hpp"
#include "sempath/types.hpp"

namespace sempath {

/// Deduplicated n-gram vectors with occurrence multiplicities.  Each point is
/// the concatenation of the f32 embeddings of n consecutive in-vocabulary
/// tokens; rows are unique under exact bitwise equality and appear in first
/// occurrence order.
struct NgramDataset {
    int n = 0;
    int R = 0;
    RowMatrixXf points;  // unique points x (n*R)
    std::vector<std::uint32_t> multiplicity;
    std::string provenance;

    std::size_t size() const { return multiplicity.size(); }
    int dimension() const { return n * R; }
    std::uint64_t total_occurrences() const;

    // Binary format: magic "NGDS", u32 version, u32 n, u32 R, u64 point
    // count, then per point n*R little-endian f32 followed by u32
    // multiplicity.
    void save(const std::filesystem::path& file) const;
    static NgramDataset load(const std::filesystem::path& file);

    // Debug mirror: multiplicity,c0,...,c{nR-1}
    void export_csv(const std::filesystem::path& file) const;
};

NgramDataset build_ngram_dataset(const Corpus& corpus, const EmbeddingMatrix& embedding, int n);

/// Nested prefix subsets of the unique points of a dataset: one shuffle,
/// then D_j = first min(sizes[j], total) points, so nesting holds by
/// construction and multiplicities ride along.
struct SubsetChain {
    std::vector<std::size_t> sizes;  // requested, strictly increasing
    std::vector<NgramDataset> datasets;
    std::uint64_t seed = 0;
};

SubsetChain nested_subsets(const NgramDataset& dataset, const std::vector<std::size_t>& sizes,
                           std::uint64_t seed);

}  // namespace sempath
