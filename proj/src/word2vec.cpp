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

#include "sempath/word2vec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sempath {

void TrainConfig::validate() const {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    if (negatives < 1) throw std::invalid_argument("negatives must be >= 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (initial_rate <= 0.0) throw std::invalid_argument("initial_rate must be > 0");
    if (final_rate <= 0.0 || final_rate > initial_rate)
        throw std::invalid_argument("final_rate must be in (0, initial_rate]");
    if (subsample_threshold < 0.0) throw std::invalid_argument("subsample_threshold must be >= 0");
}

NegativeTable NegativeTable::build(const Vocabulary& vocab) {
    NegativeTable table;
    table.probs_.resize(vocab.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        table.probs_[i] = std::pow(static_cast<double>(vocab.entry(i).count), 0.75);
        total += table.probs_[i];
    }
    if (total <= 0.0)
        throw std::invalid_argument("negative table requires at least one positive count");
    table.cdf_.resize(vocab.size());
    double running = 0.0;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        table.probs_[i] /= total;
        running += table.probs_[i];
        table.cdf_[i] = running;
    }
    table.cdf_.back() = 1.0;
    return table;
}

std::size_t NegativeTable::sample(std::mt19937_64& rng) const {
    const double u = (rng() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

std::vector<std::vector<std::size_t>> index_documents(const Corpus& corpus,
                                                      const Vocabulary& vocab) {
    std::vector<std::vector<std::size_t>> docs(corpus.documents.size());
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        docs[d].reserve(corpus.documents[d].tokens.size());
        for (const auto& tok : corpus.documents[d].tokens)
            if (const auto idx = vocab.index_of(tok)) docs[d].push_back(*idx);
    }
    return docs;
}

double word2vec_batch_loss(const Eigen::MatrixXd& in, const Eigen::MatrixXd& out,
                           const std::vector<Word2VecExample>& batch,
                           Eigen::MatrixXd* grad_in, Eigen::MatrixXd* grad_out) {
    if (grad_in) grad_in->setZero(in.rows(), in.cols());
    if (grad_out) grad_out->setZero(out.rows(), out.cols());
    double loss = 0.0;
    for (const auto& ex : batch) {
        loss += detail::example_loss(
            in, out, ex,
            [&](std::size_t row, const Eigen::RowVectorXd& g) {
                if (grad_in) grad_in->row(static_cast<Eigen::Index>(row)) += g;
            },
            [&](std::size_t row, const Eigen::RowVectorXd& g) {
                if (grad_out) grad_out->row(static_cast<Eigen::Index>(row)) += g;
            });
    }
    return loss;
}

namespace {

std::vector<double> keep_probabilities(const Vocabulary& vocab, double threshold) {
    if (threshold <= 0.0) return {};
    std::int64_t total = 0;
    for (std::size_t i = 0; i < vocab.size(); ++i) total += vocab.entry(i).count;
    std::vector<double> keep(vocab.size(), 1.0);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        const double count = static_cast<double>(vocab.entry(i).count);
        if (count <= 0.0) continue;
        const double cut = threshold * static_cast<double>(total);
        const double p = (std::sqrt(count / cut) + 1.0) * cut / count;
        keep[i] = std::min(1.0, p);
    }
    return keep;
}

EmbeddingMatrix train_word2vec(const Corpus& corpus, const Vocabulary& vocab,
                               const TrainConfig& cfg, int R, bool cbow,
                               std::vector<double>* epoch_losses) {
    cfg.validate();
    if (R < 1) throw std::invalid_argument("R must be >= 1");
    if (vocab.size() < 2)
        throw std::invalid_argument("vocabulary too small for negative sampling");

    const auto docs = index_documents(corpus, vocab);
    std::uint64_t total_positions = 0;
    for (const auto& d : docs) total_positions += d.size();
    const std::uint64_t schedule_span =
        std::max<std::uint64_t>(1, total_positions * static_cast<std::uint64_t>(cfg.epochs));

    const auto v = static_cast<Eigen::Index>(vocab.size());
    std::mt19937_64 rng(cfg.seed);
    Eigen::MatrixXd in(v, R);
    for (Eigen::Index i = 0; i < v; ++i)
        for (Eigen::Index j = 0; j < R; ++j)
            in(i, j) = ((rng() >> 11) * 0x1.0p-53 - 0.5) / static_cast<double>(R);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v, R);

    const NegativeTable table = NegativeTable::build(vocab);
    const std::vector<double> keep = keep_probabilities(vocab, cfg.subsample_threshold);

    if (epoch_losses) epoch_losses->clear();
    std::uint64_t processed = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double epoch_loss = 0.0;
        std::uint64_t epoch_examples = 0;
        std::uint64_t last_position = static_cast<std::uint64_t>(-1);
        for_each_example(docs, cfg, cbow, table, keep, rng, [&](std::uint64_t position,
                                                                const Word2VecExample& ex) {
            if (position != last_position) {
                ++processed;
                last_position = position;
            }
            const double progress =
                static_cast<double>(processed - 1) / static_cast<double>(schedule_span);
            const double lr = std::max(cfg.final_rate, cfg.initial_rate * (1.0 - progress));
            epoch_loss += detail::example_loss(
                in, out, ex,
                [&](std::size_t row, const Eigen::RowVectorXd& g) {
                    in.row(static_cast<Eigen::Index>(row)) -= lr * g;
                },
                [&](std::size_t row, const Eigen::RowVectorXd& g) {
                    out.row(static_cast<Eigen::Index>(row)) -= lr * g;
                });
            ++epoch_examples;
        });
        if (epoch_losses)
            epoch_losses->push_back(epoch_examples == 0
                                        ? 0.0
                                        : epoch_loss / static_cast<double>(epoch_examples));
    }

    std::vector<std::string> words(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) words[i] = vocab.entry(i).word;
    return EmbeddingMatrix(R, cbow ? "cbow" : "skipgram", std::move(words), std::move(in));
}

}  // namespace

EmbeddingMatrix train_cbow(const Corpus& corpus, const Vocabulary& vocab, const TrainConfig& cfg,
                           int R, std::vector<double>* epoch_losses) {
    return train_word2vec(corpus, vocab, cfg, R, true, epoch_losses);
}

EmbeddingMatrix train_skipgram(const Corpus& corpus, const Vocabulary& vocab,
                               const TrainConfig& cfg, int R,
                               std::vector<double>* epoch_losses) {
    return train_word2vec(corpus, vocab, cfg, R, false, epoch_losses);
}

}  // namespace sempath
