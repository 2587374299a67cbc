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

#include <cstddef>
#include <filesystem>
#include <vector>

#include "sempath/ngram.hpp"
#include "sempath/stats.hpp"
#include "sempath/wishart.hpp"

namespace sempath {

/// One step of the representativeness scan: metric distributions of
/// consecutive subsets compared by the eight MWW tests.
struct SubsetStep {
    std::size_t size_small = 0;
    std::size_t size_large = 0;
    int significant_before = 0;
    int significant_after = 0;
};

struct SubsetSelection {
    std::size_t chosen_size = 0;
    // Set when no subset qualified and the largest size was returned.
    bool warning_not_representative = false;
    std::vector<SubsetStep> steps;

    void save_json(const std::filesystem::path& file, const WishartParams& params,
                   double alpha, std::uint64_t seed) const;
};

/// Clusters every subset of the chain with the given parameters and returns
/// the smallest size whose comparison against the next larger subset shows
/// zero Holm-corrected rejections at level alpha.  Falls back to the largest
/// size, flagged, when none qualifies.
SubsetSelection select_representative_size(const SubsetChain& chain,
                                           const WishartParams& params, double alpha);

}  // namespace sempath
