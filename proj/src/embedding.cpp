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

#include "sempath/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sempath/truncated_svd.hpp"

namespace sempath {

EmbeddingMatrix::EmbeddingMatrix(int R_, std::string method_, std::vector<std::string> words_,
                                 Eigen::MatrixXd vectors_)
    : R(R_), method(std::move(method_)), words(std::move(words_)), vectors(std::move(vectors_)) {
    if (vectors.rows() != static_cast<Eigen::Index>(words.size()) || vectors.cols() != R)
        throw std::invalid_argument("embedding matrix shape does not match word list / R");
    rebuild_index();
}

void EmbeddingMatrix::rebuild_index() {
    index_.clear();
    index_.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) index_[words[i]] = i;
}

std::optional<std::size_t> EmbeddingMatrix::index_of(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void EmbeddingMatrix::save_tsv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "R=" << R << " method=" << method << '\n';
    char buf[64];
    for (std::size_t i = 0; i < words.size(); ++i) {
        out << words[i];
        for (int j = 0; j < R; ++j) {
            std::snprintf(buf, sizeof buf, "%.9g", vectors(static_cast<Eigen::Index>(i), j));
            out << '\t' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

EmbeddingMatrix EmbeddingMatrix::load_tsv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read embedding: " + file.string());
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error(file.string() + ": empty file");
    int r = 0;
    char method_buf[32] = {0};
    if (std::sscanf(header.c_str(), "R=%d method=%31s", &r, method_buf) != 2 || r < 1)
        throw std::runtime_error(file.string() + ": bad header, expected 'R=<int> method=<tag>'");

    std::vector<std::string> words;
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t start = 0;
        std::size_t pos = line.find('\t');
        if (pos == std::string::npos)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) + ": missing vector");
        words.push_back(line.substr(0, pos));
        start = pos + 1;
        int got = 0;
        while (start <= line.size()) {
            pos = line.find('\t', start);
            const std::string field =
                pos == std::string::npos ? line.substr(start) : line.substr(start, pos - start);
            values.push_back(std::stod(field));
            ++got;
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (got != r)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(r) + " components");
    }
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(words.size()), r);
    for (std::size_t i = 0; i < words.size(); ++i)
        for (int j = 0; j < r; ++j)
            vectors(static_cast<Eigen::Index>(i), j) = values[i * static_cast<std::size_t>(r) + j];
    return EmbeddingMatrix(r, method_buf, std::move(words), std::move(vectors));
}

Eigen::SparseMatrix<double> build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab) {
    using Triplet = Eigen::Triplet<double>;
    const auto n_docs = static_cast<Eigen::Index>(corpus.documents.size());
    const auto n_words = static_cast<Eigen::Index>(vocab.size());
    std::vector<std::vector<Triplet>> per_doc(corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        std::unordered_map<std::size_t, std::int64_t> counts;
        for (const auto& tok : corpus.documents[d].tokens)
            if (const auto idx = vocab.index_of(tok)) ++counts[*idx];
        auto& triplets = per_doc[d];
        triplets.reserve(counts.size());
        for (const auto& [w, c] : counts)
            triplets.emplace_back(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(d),
                                  std::log1p(static_cast<double>(c)));
    }
    std::vector<Triplet> all;
    for (const auto& t : per_doc) all.insert(all.end(), t.begin(), t.end());
    Eigen::SparseMatrix<double> m(n_words, n_docs);
    m.setFromTriplets(all.begin(), all.end());
    return m;
}

EmbeddingMatrix svd_embed(const Eigen::SparseMatrix<double>& cooccurrence,
                          const Vocabulary& vocab, int R, int power_iters, std::uint64_t seed) {
    if (R > std::min(cooccurrence.rows(), cooccurrence.cols()))
        throw std::invalid_argument("svd_embed: R exceeds min(vocabulary, documents)");
    const TruncatedSvd svd = truncated_svd(cooccurrence, R, power_iters, seed);
    Eigen::MatrixXd vectors =
        svd.U * svd.singular_values.cwiseSqrt().asDiagonal();
    std::vector<std::string> words(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) words[i] = vocab.entry(i).word;
    return EmbeddingMatrix(R, "svd", std::move(words), std::move(vectors));
}

}  // namespace sempath
