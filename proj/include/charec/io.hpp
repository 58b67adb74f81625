#pragma once

#include <string>
#include <vector>

#include "charec/embedding_table.hpp"
#include "charec/eval.hpp"
#include "charec/tagger.hpp"

namespace charec {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Writes via a temp file and renames, so readers never see partial output.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// "word v1 ... vd" rows, optionally preceded by a "<count> <dim>" header
// (auto-detected: exactly two integer tokens on line 1). Errors name the
// offending line: ragged rows, duplicate words, non-numeric fields.
EmbeddingTable parse_embedding_file(const std::string& path);
void write_embedding_file(const std::string& path, const EmbeddingTable& table,
                          bool header = true);

// "w1<TAB>w2<TAB>score" (any whitespace accepted between fields).
SimilarityDataset parse_similarity_file(const std::string& path);
void write_similarity_file(const std::string& path,
                           const SimilarityDataset& dataset);

// "a b c d" per line; lines starting with ':' are section headers and are
// skipped.
AnalogyDataset parse_analogy_file(const std::string& path);
void write_analogy_file(const std::string& path, const AnalogyDataset& dataset);

// "token<TAB>tag" lines, blank line between sentences.
TaggedCorpus parse_tagged_corpus(const std::string& path);
void write_tagged_corpus(const std::string& path, const TaggedCorpus& corpus);

std::vector<std::string> parse_word_list(const std::string& path);
void write_word_list(const std::string& path,
                     const std::vector<std::string>& words);

}  // namespace charec
