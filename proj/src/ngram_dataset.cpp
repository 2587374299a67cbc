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

#include "sempath/ngram.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace sempath {

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    write_u32(out, static_cast<std::uint32_t>(v));
    write_u32(out, static_cast<std::uint32_t>(v >> 32));
}

void write_f32(std::ostream& out, float v) { write_u32(out, std::bit_cast<std::uint32_t>(v)); }

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& in) {
    const std::uint64_t lo = read_u32(in);
    const std::uint64_t hi = read_u32(in);
    return lo | (hi << 32);
}

float read_f32(std::istream& in) { return std::bit_cast<float>(read_u32(in)); }

}  // namespace

std::uint64_t NgramDataset::total_occurrences() const {
    return std::accumulate(multiplicity.begin(), multiplicity.end(), std::uint64_t{0});
}

NgramDataset build_ngram_dataset(const Corpus& corpus, const EmbeddingMatrix& embedding, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    const int r = embedding.R;
    const int dim = n * r;

    // f32 rows of the embedding, so that identical token n-grams share bytes.
    RowMatrixXf word_rows = embedding.vectors.cast<float>();

    std::unordered_map<std::string, std::uint32_t> seen;
    std::vector<float> data;
    std::vector<std::uint32_t> mult;
    std::string key(static_cast<std::size_t>(dim) * sizeof(float), '\0');
    std::vector<std::size_t> indices;

    for (const auto& doc : corpus.documents) {
        indices.clear();
        for (const auto& tok : doc.tokens)
            if (const auto idx = embedding.index_of(tok)) indices.push_back(*idx);
        if (indices.size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t start = 0; start + static_cast<std::size_t>(n) <= indices.size();
             ++start) {
            char* dst = key.data();
            for (int g = 0; g < n; ++g) {
                const float* row = word_rows.row(static_cast<Eigen::Index>(indices[start + g])).data();
                std::memcpy(dst, row, static_cast<std::size_t>(r) * sizeof(float));
                dst += static_cast<std::size_t>(r) * sizeof(float);
            }
            const auto [it, inserted] =
                seen.emplace(key, static_cast<std::uint32_t>(mult.size()));
            if (inserted) {
                const float* begin = reinterpret_cast<const float*>(key.data());
                data.insert(data.end(), begin, begin + dim);
                mult.push_back(1);
            } else {
                ++mult[it->second];
            }
        }
    }

    NgramDataset ds;
    ds.n = n;
    ds.R = r;
    ds.provenance = corpus.language_tag;
    ds.multiplicity = std::move(mult);
    ds.points.resize(static_cast<Eigen::Index>(ds.multiplicity.size()), dim);
    if (!data.empty())
        std::memcpy(ds.points.data(), data.data(), data.size() * sizeof(float));
    return ds;
}

void NgramDataset::save(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.write("NGDS", 4);
    write_u32(out, 1);
    write_u32(out, static_cast<std::uint32_t>(n));
    write_u32(out, static_cast<std::uint32_t>(R));
    write_u64(out, size());
    const int dim = dimension();
    for (std::size_t i = 0; i < size(); ++i) {
        for (int j = 0; j < dim; ++j) write_f32(out, points(static_cast<Eigen::Index>(i), j));
        write_u32(out, multiplicity[i]);
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

NgramDataset NgramDataset::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read dataset: " + file.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "NGDS", 4) != 0)
        throw std::runtime_error(file.string() + ": not an NGDS file");
    const std::uint32_t version = read_u32(in);
    if (version != 1)
        throw std::runtime_error(file.string() + ": unsupported NGDS version " +
                                 std::to_string(version));
    NgramDataset ds;
    ds.n = static_cast<int>(read_u32(in));
    ds.R = static_cast<int>(read_u32(in));
    const std::uint64_t count = read_u64(in);
    if (ds.n < 1 || ds.R < 1) throw std::runtime_error(file.string() + ": bad header");
    const int dim = ds.dimension();
    ds.points.resize(static_cast<Eigen::Index>(count), dim);
    ds.multiplicity.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        for (int j = 0; j < dim; ++j) ds.points(static_cast<Eigen::Index>(i), j) = read_f32(in);
        ds.multiplicity[i] = read_u32(in);
    }
    if (!in) throw std::runtime_error(file.string() + ": truncated NGDS file");
    ds.provenance = file.stem().string();
    return ds;
}

void NgramDataset::export_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "multiplicity";
    for (int j = 0; j < dimension(); ++j) out << ",c" << j;
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < size(); ++i) {
        out << multiplicity[i];
        for (int j = 0; j < dimension(); ++j) {
            std::snprintf(buf, sizeof buf, "%.9g",
                          static_cast<double>(points(static_cast<Eigen::Index>(i), j)));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

SubsetChain nested_subsets(const NgramDataset& dataset, const std::vector<std::size_t>& sizes,
                           std::uint64_t seed) {
    if (sizes.empty()) throw std::invalid_argument("nested_subsets: sizes must be non-empty");
    for (std::size_t j = 1; j < sizes.size(); ++j)
        if (sizes[j] <= sizes[j - 1])
            throw std::invalid_argument("nested_subsets: sizes must be strictly increasing");

    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    SubsetChain chain;
    chain.sizes = sizes;
    chain.seed = seed;
    chain.datasets.reserve(sizes.size());
    for (const std::size_t requested : sizes) {
        const std::size_t take = std::min(requested, dataset.size());
        NgramDataset sub;
        sub.n = dataset.n;
        sub.R = dataset.R;
        sub.provenance = dataset.provenance + "#s=" + std::to_string(requested);
        sub.points.resize(static_cast<Eigen::Index>(take), dataset.dimension());
        sub.multiplicity.resize(take);
        for (std::size_t i = 0; i < take; ++i) {
            sub.points.row(static_cast<Eigen::Index>(i)) =
                dataset.points.row(static_cast<Eigen::Index>(order[i]));
            sub.multiplicity[i] = dataset.multiplicity[order[i]];
        }
        chain.datasets.push_back(std::move(sub));
    }
    return chain;
}

}  // namespace sempath
