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
#include <cstdint>
#include <random>
#include <vector>

#include "sempath/corpus.hpp"
#include "sempath/embedding.hpp"

namespace sempath {

struct TrainConfig {
    int window = 5;             // context half-width
    int negatives = 5;          // negative samples per positive
    int epochs = 5;
    double initial_rate = 0.025;
    double final_rate = 1e-4;   // linear decay floor
    std::uint64_t seed = 1;
    double subsample_threshold = 0.0;  // 0 disables frequent-word subsampling

    void validate() const;
};

/// Unigram^0.75 negative-sampling distribution over vocabulary indices.
class NegativeTable {
public:
    static NegativeTable build(const Vocabulary& vocab);

    std::size_t sample(std::mt19937_64& rng) const;
    const std::vector<double>& probabilities() const { return probs_; }

private:
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

/// One positive example with its negatives.  The hidden vector h is the mean
/// of the input rows; for skip-gram that is the single center word, for CBOW
/// the context words.
struct Word2VecExample {
    std::vector<std::size_t> input_words;
    std::size_t output_word = 0;
    std::vector<std::size_t> negatives;
};

namespace detail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Loss and gradient of one example at fixed parameters.  The gradient is
// reported through row-update callbacks so that SGD can apply it in place
// and the finite-difference check can accumulate it; both paths share this
// exact arithmetic.
//   L = -log sigma(out_pos . h) - sum_neg log sigma(-(out_neg . h))
template <typename InputSink, typename OutputSink>
double example_loss(const Eigen::MatrixXd& in, const Eigen::MatrixXd& out,
                    const Word2VecExample& ex, InputSink&& input_grad,
                    OutputSink&& output_grad) {
    const Eigen::Index r = in.cols();
    Eigen::RowVectorXd h = Eigen::RowVectorXd::Zero(r);
    for (const std::size_t w : ex.input_words) h += in.row(static_cast<Eigen::Index>(w));
    h /= static_cast<double>(ex.input_words.size());

    Eigen::RowVectorXd grad_h = Eigen::RowVectorXd::Zero(r);
    double loss = 0.0;

    const auto positive = static_cast<Eigen::Index>(ex.output_word);
    const double s_pos = sigmoid(out.row(positive).dot(h));
    loss -= std::log(s_pos);
    grad_h += (s_pos - 1.0) * out.row(positive);
    output_grad(ex.output_word, Eigen::RowVectorXd((s_pos - 1.0) * h));

    for (const std::size_t neg : ex.negatives) {
        const auto row = static_cast<Eigen::Index>(neg);
        const double s_neg = sigmoid(out.row(row).dot(h));
        loss -= std::log(1.0 - s_neg);
        grad_h += s_neg * out.row(row);
        output_grad(neg, Eigen::RowVectorXd(s_neg * h));
    }

    const double scale = 1.0 / static_cast<double>(ex.input_words.size());
    for (const std::size_t w : ex.input_words)
        input_grad(w, Eigen::RowVectorXd(scale * grad_h));
    return loss;
}

}  // namespace detail

/// Emits the training examples of one epoch in deterministic order, tagged
/// with a global position counter (one tick per surviving token position,
/// across documents).  Negative draws that hit the positive word are skipped,
/// so an example may carry fewer than cfg.negatives negatives.
template <typename Fn>
void for_each_example(const std::vector<std::vector<std::size_t>>& docs, const TrainConfig& cfg,
                      bool cbow, const NegativeTable& table,
                      const std::vector<double>& keep_probability, std::mt19937_64& rng,
                      Fn&& fn) {
    std::vector<std::size_t> sentence;
    const auto canonical = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    std::uint64_t position = 0;
    for (const auto& doc : docs) {
        sentence.clear();
        for (const std::size_t w : doc) {
            if (!keep_probability.empty() && keep_probability[w] < 1.0 &&
                canonical() >= keep_probability[w])
                continue;
            sentence.push_back(w);
        }
        const std::size_t len = sentence.size();
        for (std::size_t t = 0; t < len; ++t, ++position) {
            const std::size_t lo = t >= static_cast<std::size_t>(cfg.window)
                                       ? t - static_cast<std::size_t>(cfg.window)
                                       : 0;
            const std::size_t hi = std::min(len, t + static_cast<std::size_t>(cfg.window) + 1);
            Word2VecExample ex;
            if (cbow) {
                for (std::size_t c = lo; c < hi; ++c)
                    if (c != t) ex.input_words.push_back(sentence[c]);
                if (ex.input_words.empty()) continue;
                ex.output_word = sentence[t];
                ex.negatives.reserve(static_cast<std::size_t>(cfg.negatives));
                for (int n = 0; n < cfg.negatives; ++n) {
                    const std::size_t neg = table.sample(rng);
                    if (neg != ex.output_word) ex.negatives.push_back(neg);
                }
                fn(position, ex);
            } else {
                for (std::size_t c = lo; c < hi; ++c) {
                    if (c == t) continue;
                    ex.input_words.assign(1, sentence[t]);
                    ex.output_word = sentence[c];
                    ex.negatives.clear();
                    for (int n = 0; n < cfg.negatives; ++n) {
                        const std::size_t neg = table.sample(rng);
                        if (neg != ex.output_word) ex.negatives.push_back(neg);
                    }
                    fn(position, ex);
                }
            }
        }
    }
}

/// Maps corpus tokens to vocabulary indices, dropping out-of-vocabulary tokens.
std::vector<std::vector<std::size_t>> index_documents(const Corpus& corpus,
                                                      const Vocabulary& vocab);

/// Total loss (and optional dense gradients) of a fixed example batch at
/// fixed parameters; the oracle surface for gradient checking.
double word2vec_batch_loss(const Eigen::MatrixXd& in, const Eigen::MatrixXd& out,
                           const std::vector<Word2VecExample>& batch,
                           Eigen::MatrixXd* grad_in = nullptr,
                           Eigen::MatrixXd* grad_out = nullptr);

EmbeddingMatrix train_cbow(const Corpus& corpus, const Vocabulary& vocab, const TrainConfig& cfg,
                           int R, std::vector<double>* epoch_losses = nullptr);
EmbeddingMatrix train_skipgram(const Corpus& corpus, const Vocabulary& vocab,
                               const TrainConfig& cfg, int R,
                               std::vector<double>* epoch_losses = nullptr);

}  // namespace sempath
