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

#include "sempath/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sempath {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& p : split_commas(text)) out.push_back(std::stoi(p));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split_commas(text)) out.push_back(std::stod(p));
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& p : split_commas(text)) out.push_back(std::stoull(p));
    return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "language") language = value;
    else if (key == "n") n = std::stoi(value);
    else if (key == "R") R = std::stoi(value);
    else if (key == "method") method = value;
    else if (key == "window") window = std::stoi(value);
    else if (key == "negatives") negatives = std::stoi(value);
    else if (key == "epochs") epochs = std::stoi(value);
    else if (key == "learning_rate") learning_rate = std::stod(value);
    else if (key == "subsample") subsample = std::stod(value);
    else if (key == "min_count") min_count = std::stoll(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "alpha") alpha = std::stod(value);
    else if (key == "T") T = std::stod(value);
    else if (key == "k_grid") k_grid = parse_int_list(value);
    else if (key == "h_grid") h_grid = parse_double_list(value);
    else if (key == "sizes") sizes = parse_size_list(value);
    else if (key == "power_iters") power_iters = std::stoi(value);
    else if (key == "threads") threads = static_cast<unsigned>(std::stoul(value));
    else throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read config: " + file.string());
    ExperimentConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        try {
            config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
    }
    return config;
}

double resolve_T(const ExperimentConfig& config) {
    if (config.T) return *config.T;
    if (config.language == "en") return 4.0;
    // ru, de, vi and anything unlisted
    return 2.0;
}

}  // namespace sempath
