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

#include "sempath/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace sempath {

namespace {

// Midranks of the pooled sample; also reports whether any ties occurred and
// the tie-correction term sum(t^3 - t).
struct PooledRanks {
    std::vector<double> ranks;  // aligned to a followed by b
    bool has_ties = false;
    double tie_term = 0.0;
};

PooledRanks midranks(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size() + b.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto value = [&](std::size_t i) { return i < a.size() ? a[i] : b[i - a.size()]; };
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return value(x) < value(y); });

    PooledRanks result;
    result.ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && value(order[j + 1]) == value(order[i])) ++j;
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t t = i; t <= j; ++t) result.ranks[order[t]] = rank;
        const double tied = static_cast<double>(j - i + 1);
        if (tied > 1.0) {
            result.has_ties = true;
            result.tie_term += tied * tied * tied - tied;
        }
        i = j + 1;
    }
    return result;
}

// Null distribution counts of U for sizes (n, m):
// f(n, m, u) = f(n-1, m, u-m) + f(n, m-1, u).
std::vector<std::uint64_t> exact_u_counts(std::size_t n, std::size_t m) {
    const std::size_t u_max = n * m;
    std::vector<std::vector<std::uint64_t>> table(
        n + 1, std::vector<std::uint64_t>(u_max + 1, 0));
    // f(0, m, u) = [u == 0] for any m; build up m one step at a time.
    for (std::size_t mm = 0; mm <= m; ++mm) {
        for (std::size_t nn = 0; nn <= n; ++nn) {
            std::vector<std::uint64_t>& row = table[nn];
            if (mm == 0) {
                std::fill(row.begin(), row.end(), 0);
                row[0] = 1;
                continue;
            }
            if (nn == 0) {
                // row stays [1, 0, 0, ...]
                continue;
            }
            // In-place update over u ascending: row currently holds f(nn, mm-1, .),
            // table[nn-1] already holds f(nn-1, mm, .).
            const std::vector<std::uint64_t>& prev = table[nn - 1];
            for (std::size_t u = 0; u <= u_max; ++u) {
                const std::uint64_t from_smaller_n = u >= mm ? prev[u - mm] : 0;
                row[u] += from_smaller_n;
            }
        }
    }
    return table[n];
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

MwwResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                         MwwMethod method) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("mann_whitney_u: samples must be non-empty");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const PooledRanks pooled = midranks(a, b);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += pooled.ranks[i];
    const double u_a = rank_sum_a - na * (na + 1.0) / 2.0;
    const double u_b = na * nb - u_a;
    MwwResult result;
    result.u = std::min(u_a, u_b);

    bool use_exact;
    switch (method) {
        case MwwMethod::exact:
            if (pooled.has_ties)
                throw std::invalid_argument("mann_whitney_u: exact method requires tie-free data");
            if (a.size() + b.size() > 60)  // keep C(n_a+n_b, n_a) within uint64
                throw std::invalid_argument("mann_whitney_u: exact method limited to n_a+n_b <= 60");
            use_exact = true;
            break;
        case MwwMethod::normal_approx:
            use_exact = false;
            break;
        default:
            use_exact = a.size() <= 8 && b.size() <= 8 && !pooled.has_ties;
    }

    if (use_exact) {
        const std::vector<std::uint64_t> counts = exact_u_counts(a.size(), b.size());
        const auto u_obs = static_cast<std::size_t>(std::llround(result.u));
        std::uint64_t below = 0, total = 0;
        for (std::size_t u = 0; u < counts.size(); ++u) {
            total += counts[u];
            if (u <= u_obs) below += counts[u];
        }
        result.p = std::min(1.0, 2.0 * static_cast<double>(below) / static_cast<double>(total));
        result.used_exact = true;
        return result;
    }

    const double n = na + nb;
    const double variance =
        na * nb / 12.0 * ((n + 1.0) - pooled.tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) {
        result.p = 1.0;  // every pooled value identical
        return result;
    }
    const double mean = na * nb / 2.0;
    const double z = (result.u - mean + 0.5) / std::sqrt(variance);
    result.p = std::min(1.0, std::max(0.0, 2.0 * normal_cdf(z)));
    return result;
}

HolmResult holm_bonferroni(std::span<const double> pvals, double alpha) {
    for (const double p : pvals)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("holm_bonferroni: p-values must lie in [0, 1]");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("holm_bonferroni: alpha must lie in (0, 1)");

    const std::size_t m = pvals.size();
    HolmResult result;
    result.reject.assign(m, false);
    result.adjusted.assign(m, 0.0);
    if (m == 0) return result;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return pvals[x] < pvals[y]; });

    bool keep_rejecting = true;
    double running_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double p = pvals[order[i]];
        const double factor = static_cast<double>(m - i);
        if (keep_rejecting && p <= alpha / factor)
            result.reject[order[i]] = true;
        else
            keep_rejecting = false;
        running_max = std::max(running_max, factor * p);
        result.adjusted[order[i]] = std::min(1.0, running_max);
    }
    return result;
}

ComparisonReport compare_clusterizations(const MetricArrays& a, const MetricArrays& b,
                                         double alpha, std::string provenance_a,
                                         std::string provenance_b) {
    ComparisonReport report;
    report.alpha = alpha;
    report.n_clusters_a = a.num_clusters();
    report.n_clusters_b = b.num_clusters();
    report.low_power = report.n_clusters_a < 2 || report.n_clusters_b < 2;
    report.provenance_a = std::move(provenance_a);
    report.provenance_b = std::move(provenance_b);

    std::array<double, 8> raw{};
    for (int metric = 0; metric < 8; ++metric) {
        const auto& va = a.xi[static_cast<std::size_t>(metric)];
        const auto& vb = b.xi[static_cast<std::size_t>(metric)];
        const MwwResult mw = mann_whitney_u(
            std::span<const double>(va.data(), static_cast<std::size_t>(va.size())),
            std::span<const double>(vb.data(), static_cast<std::size_t>(vb.size())));
        TestResult& t = report.tests[static_cast<std::size_t>(metric)];
        t.metric = metric + 1;
        t.u = mw.u;
        t.p_raw = mw.p;
        t.reject_raw = mw.p <= alpha;
        raw[static_cast<std::size_t>(metric)] = mw.p;
    }
    const HolmResult holm = holm_bonferroni(raw, alpha);
    for (int metric = 0; metric < 8; ++metric) {
        TestResult& t = report.tests[static_cast<std::size_t>(metric)];
        t.p_holm = holm.adjusted[static_cast<std::size_t>(metric)];
        t.reject_holm = holm.reject[static_cast<std::size_t>(metric)];
        if (t.reject_raw) ++report.significant_before;
        if (t.reject_holm) ++report.significant_after;
    }
    return report;
}

std::string ComparisonReport::summary() const {
    return std::to_string(significant_before) + "-" + std::to_string(significant_after);
}

std::string ComparisonReport::to_json() const {
    nlohmann::json j;
    j["alpha"] = alpha;
    j["before"] = significant_before;
    j["after"] = significant_after;
    j["summary"] = summary();
    j["n_clusters_a"] = n_clusters_a;
    j["n_clusters_b"] = n_clusters_b;
    j["low_power"] = low_power;
    j["provenance_a"] = provenance_a;
    j["provenance_b"] = provenance_b;
    nlohmann::json tests_json = nlohmann::json::array();
    for (const TestResult& t : tests) {
        nlohmann::json tj;
        tj["metric"] = t.metric;
        tj["U"] = t.u;
        tj["p_raw"] = t.p_raw;
        tj["p_holm"] = t.p_holm;
        tj["reject_raw"] = t.reject_raw;
        tj["reject_holm"] = t.reject_holm;
        tests_json.push_back(tj);
    }
    j["tests"] = tests_json;
    return j.dump(2) + "\n";
}

void ComparisonReport::save_json(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << to_json();
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace sempath
