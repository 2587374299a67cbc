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

#include "sempath/wishart.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sempath {

double Clustering::ratio_not_noise() const {
    if (labels.empty()) return 0.0;
    std::size_t assigned = 0;
    for (const int l : labels)
        if (l != 0) ++assigned;
    return static_cast<double>(assigned) / static_cast<double>(labels.size());
}

void Clustering::save_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "point_index,label,density,knn_radius\n";
    char buf[64];
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out << i << ',' << labels[i];
        std::snprintf(buf, sizeof buf, "%.9g", densities(static_cast<Eigen::Index>(i)));
        out << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.9g", knn_radii(static_cast<Eigen::Index>(i)));
        out << ',' << buf << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

Clustering Clustering::load_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read clustering: " + file.string());
    std::string line;
    if (!std::getline(in, line) || line != "point_index,label,density,knn_radius")
        throw std::runtime_error(file.string() + ": not a clustering CSV");
    Clustering cl;
    std::vector<double> dens;
    std::vector<double> radii;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t index = 0;
        int label = 0;
        double density = 0.0, radius = 0.0;
        if (std::sscanf(line.c_str(), "%zu,%d,%lf,%lf", &index, &label, &density, &radius) != 4)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": bad clustering row");
        if (index != cl.labels.size())
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": point indices must be contiguous from 0");
        cl.labels.push_back(label);
        dens.push_back(density);
        radii.push_back(radius);
        cl.num_clusters = std::max(cl.num_clusters, label);
    }
    cl.densities = Eigen::Map<const Eigen::VectorXd>(dens.data(), static_cast<Eigen::Index>(dens.size()));
    cl.knn_radii = Eigen::Map<const Eigen::VectorXd>(radii.data(), static_cast<Eigen::Index>(radii.size()));
    cl.completed.assign(static_cast<std::size_t>(cl.num_clusters), false);
    return cl;
}

ValidityScore ch_adjusted(double ch, const Clustering& clustering, double T) {
    if (T < 0.0) throw std::invalid_argument("ch_adjusted: T must be >= 0");
    ValidityScore score;
    score.ch = ch;
    score.T = T;
    score.ratio_not_noise = clustering.ratio_not_noise();
    score.ch_adj = ch * std::pow(score.ratio_not_noise, T);
    return score;
}

double knn_density(double radius, int k, std::size_t n_points, int dim) {
    if (radius <= 0.0) return std::numeric_limits<double>::infinity();
    const double log_volume = 0.5 * dim * std::log(M_PI) + dim * std::log(radius) -
                              std::lgamma(0.5 * dim + 1.0);
    return std::exp(std::log(static_cast<double>(k)) -
                    std::log(static_cast<double>(n_points)) - log_volume);
}

Eigen::VectorXd knn_density_from_sq(const Eigen::VectorXd& sq_radii, int k, int dim) {
    const Eigen::Index n = sq_radii.size();
    const double log_k_over_n =
        std::log(static_cast<double>(k)) - std::log(static_cast<double>(n));
    const double log_unit_ball =
        0.5 * dim * std::log(M_PI) - std::lgamma(0.5 * dim + 1.0);
    Eigen::VectorXd density(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sq_radii(i) <= 0.0) {
            density(i) = std::numeric_limits<double>::infinity();
            continue;
        }
        const double log_volume = log_unit_ball + 0.5 * dim * std::log(sq_radii(i));
        density(i) = std::exp(log_k_over_n - log_volume);
    }
    return density;
}

void save_grid_csv(const std::vector<GridCell>& table, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "k,h,NC,ratio_not_noise,ch,ch_adj\n";
    char buf[64];
    for (const GridCell& cell : table) {
        out << cell.params.k << ',';
        std::snprintf(buf, sizeof buf, "%.9g", cell.params.h);
        out << buf << ',' << cell.num_clusters << ',';
        std::snprintf(buf, sizeof buf, "%.9g", cell.ratio_not_noise);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.9g", cell.ch);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.9g", cell.ch_adj);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace sempath
