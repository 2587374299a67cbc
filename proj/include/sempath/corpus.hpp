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
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sempath {

/// One tokenized text.  Tokens are lowercased, whitespace-free and non-empty.
struct Document {
    std::string id;  // file stem
    std::vector<std::string> tokens;
};

/// Exact-match token replacement table (e.g. pronouns -> "<pron>").
/// Sources are matched against already-lowercased tokens; a replacement
/// target (special token) must never appear as a source, which makes
/// application idempotent.
class ReplacementRules {
public:
    ReplacementRules() = default;
    explicit ReplacementRules(std::map<std::string, std::string> mapping);

    static ReplacementRules load_tsv(const std::filesystem::path& file);

    // Returns the replacement for token, or token itself when no rule matches.
    const std::string& apply(const std::string& token) const;

    const std::set<std::string>& special_tokens() const { return specials_; }
    bool empty() const { return mapping_.empty(); }

private:
    std::map<std::string, std::string> mapping_;
    std::set<std::string> specials_;
};

/// Ordered collection of documents, sorted by id.
struct Corpus {
    std::vector<Document> documents;
    std::string language_tag;

    std::uint64_t total_tokens() const;
};

/// Loads every .txt file under root (non-recursive), one document per file.
/// Tokens are split on Unicode whitespace, lowercased, then passed through
/// the replacement rules.  Documents come back sorted by id.
Corpus load_corpus(const std::filesystem::path& root, const ReplacementRules& rules,
                   std::string language_tag = {});

/// Word -> (dense index, total count).  Indices run 0..V-1 in descending
/// count order, ties broken lexicographically.  Special tokens are always
/// retained regardless of count.
class Vocabulary {
public:
    struct Entry {
        std::string word;
        std::int64_t count = 0;
    };

    static Vocabulary build(const Corpus& corpus, std::int64_t min_count,
                            const std::set<std::string>& special_tokens = {});

    std::size_t size() const { return entries_.size(); }
    const Entry& entry(std::size_t index) const { return entries_[index]; }
    std::optional<std::size_t> index_of(std::string_view word) const;
    bool is_special(const std::string& word) const { return specials_.count(word) > 0; }
    const std::set<std::string>& special_tokens() const { return specials_; }

    // TSV: word<TAB>index<TAB>count, sorted by index, LF line endings.
    void save_tsv(const std::filesystem::path& file) const;
    static Vocabulary load_tsv(const std::filesystem::path& file);

private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
    std::set<std::string> specials_;

    void rebuild_index();
};

struct CorpusStats {
    std::size_t documents = 0;
    std::int64_t avg_tokens = 0;  // rounded half up
    std::size_t vocabulary_size = 0;  // distinct tokens (min_count = 1)
};

CorpusStats corpus_stats(const Corpus& corpus);

// Processed-corpus persistence, so later pipeline stages do not need the raw
// directory or the rules again.
void save_corpus(const Corpus& corpus, const std::filesystem::path& file);
Corpus load_corpus_manifest(const std::filesystem::path& file);

}  // namespace sempath
