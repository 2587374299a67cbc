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

#include "sempath/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "sempath/parallel.hpp"
#include "sempath/text.hpp"

namespace sempath {

namespace {

std::string read_file_bytes(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("cannot read file: " + file.string());
    return std::move(buf).str();
}

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace

ReplacementRules::ReplacementRules(std::map<std::string, std::string> mapping)
    : mapping_(std::move(mapping)) {
    for (const auto& [src, dst] : mapping_) {
        if (dst.empty()) throw std::invalid_argument("replacement target must not be empty");
        specials_.insert(dst);
    }
    for (const auto& [src, dst] : mapping_) {
        if (specials_.count(src) > 0)
            throw std::invalid_argument("special token used as replacement source: " + src);
    }
}

ReplacementRules ReplacementRules::load_tsv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read rules file: " + file.string());
    std::map<std::string, std::string> mapping;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line, '\t');
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": expected 'source<TAB>special_token'");
        mapping[fields[0]] = fields[1];
    }
    return ReplacementRules(std::move(mapping));
}

const std::string& ReplacementRules::apply(const std::string& token) const {
    const auto it = mapping_.find(token);
    return it == mapping_.end() ? token : it->second;
}

std::uint64_t Corpus::total_tokens() const {
    std::uint64_t n = 0;
    for (const auto& doc : documents) n += doc.tokens.size();
    return n;
}

Corpus load_corpus(const std::filesystem::path& root, const ReplacementRules& rules,
                   std::string language_tag) {
    if (!std::filesystem::is_directory(root))
        throw std::runtime_error("corpus root is not a directory: " + root.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    }
    if (files.empty()) throw std::runtime_error("no documents in " + root.string());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.stem().string() < b.stem().string(); });

    Corpus corpus;
    corpus.language_tag = std::move(language_tag);
    corpus.documents.resize(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for_each_index(files.size(), [&](std::size_t i) {
        try {
            const std::string bytes = read_file_bytes(files[i]);
            Document doc;
            doc.id = files[i].stem().string();
            doc.tokens = text::split_lower_tokens(bytes);
            for (auto& tok : doc.tokens) tok = rules.apply(tok);
            corpus.documents[i] = std::move(doc);
        } catch (const std::exception& e) {
            errors[i] = files[i].string() + ": " + e.what();
        }
    });
    for (const auto& err : errors)
        if (!err.empty()) throw std::runtime_error(err);

    std::unordered_set<std::string> seen;
    for (const auto& doc : corpus.documents)
        if (!seen.insert(doc.id).second)
            throw std::runtime_error("duplicate document id: " + doc.id);
    return corpus;
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::int64_t min_count,
                             const std::set<std::string>& special_tokens) {
    if (corpus.documents.empty()) throw std::invalid_argument("corpus is empty");
    if (min_count < 1) throw std::invalid_argument("min_count must be positive");

    std::unordered_map<std::string, std::int64_t> counts;
    for (const auto& doc : corpus.documents)
        for (const auto& tok : doc.tokens) ++counts[tok];

    Vocabulary vocab;
    vocab.specials_ = special_tokens;
    for (const auto& [word, count] : counts)
        if (count >= min_count || special_tokens.count(word) > 0)
            vocab.entries_.push_back({word, count});
    for (const auto& sp : special_tokens)
        if (counts.find(sp) == counts.end()) vocab.entries_.push_back({sp, 0});
    if (vocab.entries_.empty()) throw std::runtime_error("empty vocabulary");

    std::sort(vocab.entries_.begin(), vocab.entries_.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.word < b.word;
    });
    vocab.rebuild_index();
    return vocab;
}

void Vocabulary::rebuild_index() {
    index_.clear();
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) index_[entries_[i].word] = i;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view word) const {
    const auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Vocabulary::save_tsv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out << entries_[i].word << '\t' << i << '\t' << entries_[i].count << '\n';
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

Vocabulary Vocabulary::load_tsv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read vocabulary: " + file.string());
    Vocabulary vocab;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line, '\t');
        if (fields.size() != 3)
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": expected 'word<TAB>index<TAB>count'");
        const std::size_t index = std::stoull(fields[1]);
        if (index != vocab.entries_.size())
            throw std::runtime_error(file.string() + ":" + std::to_string(lineno) +
                                     ": indices must be contiguous from 0");
        vocab.entries_.push_back({fields[0], std::stoll(fields[2])});
    }
    if (vocab.entries_.empty()) throw std::runtime_error("empty vocabulary: " + file.string());
    vocab.rebuild_index();
    return vocab;
}

CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats stats;
    stats.documents = corpus.documents.size();
    if (stats.documents == 0) return stats;
    const std::uint64_t total = corpus.total_tokens();
    stats.avg_tokens = static_cast<std::int64_t>(
        std::llround(static_cast<double>(total) / static_cast<double>(stats.documents)));
    std::unordered_set<std::string> distinct;
    for (const auto& doc : corpus.documents)
        for (const auto& tok : doc.tokens) distinct.insert(tok);
    stats.vocabulary_size = distinct.size();
    return stats;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << "sempath-corpus\t1\n";
    out << "language\t" << corpus.language_tag << '\n';
    out << "documents\t" << corpus.documents.size() << '\n';
    for (const auto& doc : corpus.documents) {
        out << doc.id << '\t';
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i > 0) out << ' ';
            out << doc.tokens[i];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

Corpus load_corpus_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read corpus manifest: " + file.string());
    std::string line;
    if (!std::getline(in, line) || line != "sempath-corpus\t1")
        throw std::runtime_error(file.string() + ": not a sempath corpus manifest");
    Corpus corpus;
    if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": truncated header");
    {
        const auto fields = split_line(line, '\t');
        if (fields.size() != 2 || fields[0] != "language")
            throw std::runtime_error(file.string() + ": bad language line");
        corpus.language_tag = fields[1];
    }
    std::size_t expected = 0;
    if (!std::getline(in, line)) throw std::runtime_error(file.string() + ": truncated header");
    {
        const auto fields = split_line(line, '\t');
        if (fields.size() != 2 || fields[0] != "documents")
            throw std::runtime_error(file.string() + ": bad documents line");
        expected = std::stoull(fields[1]);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_line(line, '\t');
        if (fields.size() != 2)
            throw std::runtime_error(file.string() + ": bad document line");
        Document doc;
        doc.id = fields[0];
        std::istringstream toks(fields[1]);
        std::string tok;
        while (toks >> tok) doc.tokens.push_back(tok);
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.size() != expected)
        throw std::runtime_error(file.string() + ": document count mismatch");
    return corpus;
}

}  // namespace sempath
