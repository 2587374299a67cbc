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

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sempath/cluster_metrics.hpp"

namespace sempath {

enum class MwwMethod {
    automatic,      // exact when both sides <= 8 and tie-free, else normal
    exact,          // enumeration of the null U distribution
    normal_approx,  // tie-corrected normal approximation, continuity 0.5
};

struct MwwResult {
    double u = 0.0;  // min(U_a, U_b)
    double p = 1.0;  // two-sided
    bool used_exact = false;
};

/// Two-sample Mann-Whitney-Wilcoxon test from midrank sums.
MwwResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                         MwwMethod method = MwwMethod::automatic);

struct HolmResult {
    std::vector<bool> reject;
    std::vector<double> adjusted;
};

/// Holm's step-down correction; adjusted p-values are the monotone running
/// maxima of (m-i+1) * p_(i), mapped back to input order.
HolmResult holm_bonferroni(std::span<const double> pvals, double alpha);

struct TestResult {
    int metric = 0;  // 1..8
    double u = 0.0;
    double p_raw = 1.0;
    double p_holm = 1.0;
    bool reject_raw = false;
    bool reject_holm = false;
};

struct ComparisonReport {
    std::array<TestResult, 8> tests;
    int significant_before = 0;
    int significant_after = 0;
    double alpha = 0.05;
    int n_clusters_a = 0;
    int n_clusters_b = 0;
    bool low_power = false;  // set when either side has fewer than 2 clusters
    std::string provenance_a;
    std::string provenance_b;

    std::string summary() const;  // "B-A", e.g. "5-3"
    std::string to_json() const;
    void save_json(const std::filesystem::path& file) const;
};

/// Runs the eight per-metric tests and Holm-corrects across them.
ComparisonReport compare_clusterizations(const MetricArrays& a, const MetricArrays& b,
                                         double alpha = 0.05, std::string provenance_a = {},
                                         std::string provenance_b = {});

}  // namespace sempath
