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
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sempath {

/// Flat key=value experiment configuration.  Every key can be overridden by
/// the matching CLI flag; unknown keys are rejected.  Recognised keys:
///   language, n, R, method, window, negatives, epochs, learning_rate,
///   subsample, min_count, seed, alpha, T, k_grid, h_grid, sizes,
///   power_iters, threads
struct ExperimentConfig {
    std::string language = "und";
    int n = 2;
    int R = 8;
    std::string method = "cbow";
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    double subsample = 0.0;
    std::int64_t min_count = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    std::optional<double> T;  // resolved per language when unset
    std::vector<int> k_grid{11};
    std::vector<double> h_grid{0.0};
    std::vector<std::size_t> sizes;
    int power_iters = 20;
    unsigned threads = 0;  // 0 = hardware default

    // Apply one key=value pair (shared by config files and flag plumbing).
    void set(const std::string& key, const std::string& value);
};

ExperimentConfig load_config(const std::filesystem::path& file);

/// T from the config when set, otherwise the per-language default
/// (ru 2, en 4, de 2, vi 2; anything else 2).
double resolve_T(const ExperimentConfig& config);

// Comma-separated list parsing used by grid/size options.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace sempath
