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

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sempath/corpus.hpp"

namespace sempath {

/// Vocabulary-indexed dense word vectors.  Row i of `vectors` is the word
/// `words[i]`; every vocabulary index has a row.
struct EmbeddingMatrix {
    int R = 0;
    std::string method;  // svd | cbow | skipgram
    std::vector<std::string> words;
    Eigen::MatrixXd vectors;  // V x R

    EmbeddingMatrix() = default;
    EmbeddingMatrix(int R, std::string method, std::vector<std::string> words,
                    Eigen::MatrixXd vectors);

    std::size_t vocabulary_size() const { return words.size(); }
    std::optional<std::size_t> index_of(std::string_view word) const;

    // TSV: header "R=<int> method=<tag>", then word<TAB>v0<TAB>...<TAB>v{R-1}
    // with 9 significant digits.  Round-trips within 1e-8.
    void save_tsv(const std::filesystem::path& file) const;
    static EmbeddingMatrix load_tsv(const std::filesystem::path& file);

private:
    std::unordered_map<std::string, std::size_t> index_;
    void rebuild_index();
};

/// Word x document matrix with entries log(1 + count of word in document).
Eigen::SparseMatrix<double> build_cooccurrence(const Corpus& corpus, const Vocabulary& vocab);

/// LSA-style embedding: rank-R truncated SVD of the co-occurrence matrix;
/// word vector i is row i of U_R * diag(sqrt(sigma)).
EmbeddingMatrix svd_embed(const Eigen::SparseMatrix<double>& cooccurrence,
                          const Vocabulary& vocab, int R, int power_iters, std::uint64_t seed);

}  // namespace sempath
