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

#include "sempath/subset_select.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "sempath/cluster_metrics.hpp"

namespace sempath {

SubsetSelection select_representative_size(const SubsetChain& chain,
                                           const WishartParams& params, double alpha) {
    if (chain.datasets.size() < 2)
        throw std::invalid_argument("select_representative_size: chain needs >= 2 subsets");

    SubsetSelection selection;
    MetricArrays current;
    bool have_current = false;
    std::size_t chosen = 0;
    bool found = false;
    for (std::size_t j = 0; j + 1 < chain.datasets.size(); ++j) {
        if (!have_current) {
            const Clustering cl = wishart_cluster(chain.datasets[j].points, params);
            current = metric_arrays(summarize_clusters(chain.datasets[j], cl),
                                    chain.datasets[j]);
        }
        const Clustering cl_next = wishart_cluster(chain.datasets[j + 1].points, params);
        MetricArrays next = metric_arrays(summarize_clusters(chain.datasets[j + 1], cl_next),
                                          chain.datasets[j + 1]);
        const ComparisonReport report =
            compare_clusterizations(current, next, alpha, chain.datasets[j].provenance,
                                    chain.datasets[j + 1].provenance);
        selection.steps.push_back({chain.sizes[j], chain.sizes[j + 1],
                                   report.significant_before, report.significant_after});
        if (!found && report.significant_after == 0) {
            chosen = chain.sizes[j];
            found = true;
            break;
        }
        current = std::move(next);
        have_current = true;
    }
    if (found) {
        selection.chosen_size = chosen;
    } else {
        selection.chosen_size = chain.sizes.back();
        selection.warning_not_representative = true;
    }
    return selection;
}

void SubsetSelection::save_json(const std::filesystem::path& file, const WishartParams& params,
                                double alpha, std::uint64_t seed) const {
    nlohmann::json j;
    j["chosen_size"] = chosen_size;
    j["warning_not_representative"] = warning_not_representative;
    j["alpha"] = alpha;
    j["k"] = params.k;
    j["h"] = params.h;
    j["seed"] = seed;
    nlohmann::json steps_json = nlohmann::json::array();
    for (const SubsetStep& s : steps) {
        nlohmann::json sj;
        sj["size_small"] = s.size_small;
        sj["size_large"] = s.size_large;
        sj["before"] = s.significant_before;
        sj["after"] = s.significant_after;
        steps_json.push_back(sj);
    }
    j["steps"] = steps_json;
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace sempath
