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

#include "sempath/pca.hpp"

#include <cstdio>
#include <fstream>

namespace sempath {

void save_projection_csv(const Eigen::MatrixX2d& xy, const std::vector<int>& labels,
                         const std::filesystem::path& file) {
    if (labels.size() != static_cast<std::size_t>(xy.rows()))
        throw std::invalid_argument("save_projection_csv: label count mismatch");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "x,y,label\n";
    char buf[64];
    for (Eigen::Index i = 0; i < xy.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", xy(i, 0));
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.9g", xy(i, 1));
        out << buf << ',' << labels[static_cast<std::size_t>(i)] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace sempath
