#include "charec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace charec {

namespace {

std::runtime_error parse_error(const std::string& path, size_t line,
                               const std::string& message) {
  return std::runtime_error(path + ":" + std::to_string(line) + ": " +
                            message);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double_token(const std::string& token, double* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc{} && ptr == end && std::isfinite(*out);
}

bool parse_uint_token(const std::string& token, size_t* out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string path_stem(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  const size_t start = slash == std::string::npos ? 0 : slash + 1;
  size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || dot <= start) dot = path.size();
  return path.substr(start, dot - start);
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, ptr);
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open file for writing: " + tmp);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

EmbeddingTable parse_embedding_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  EmbeddingTable table;
  size_t dim = 0;
  size_t start = 0;

  // Header: exactly two non-negative integer tokens on the first line.
  if (!lines.empty()) {
    const auto tokens = split_ws(lines[0]);
    size_t count = 0, header_dim = 0;
    if (tokens.size() == 2 && parse_uint_token(tokens[0], &count) &&
        parse_uint_token(tokens[1], &header_dim)) {
      dim = header_dim;
      start = 1;
    }
  }

  for (size_t i = start; i < lines.size(); ++i) {
    const size_t line_no = i + 1;
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) {
      throw parse_error(path, line_no, "expected a word and its vector");
    }
    const std::string& word = tokens[0];
    if (dim == 0) {
      dim = tokens.size() - 1;
    } else if (tokens.size() - 1 != dim) {
      throw parse_error(path, line_no,
                        "row has " + std::to_string(tokens.size() - 1) +
                            " values, expected " + std::to_string(dim));
    }
    Vec vec(dim);
    for (size_t k = 0; k < dim; ++k) {
      if (!parse_double_token(tokens[k + 1], &vec[k])) {
        throw parse_error(path, line_no,
                          "non-numeric field '" + tokens[k + 1] + "'");
      }
    }
    if (table.contains(word)) {
      throw parse_error(path, line_no, "duplicate word '" + word + "'");
    }
    table.insert(word, std::move(vec));
  }
  if (table.empty()) {
    throw std::runtime_error(path + ": no embedding rows");
  }
  return table;
}

void write_embedding_file(const std::string& path, const EmbeddingTable& table,
                          bool header) {
  std::string out;
  if (header) {
    out += std::to_string(table.size());
    out += ' ';
    out += std::to_string(table.dim());
    out += '\n';
  }
  for (size_t i = 0; i < table.size(); ++i) {
    out += table.words()[i];
    const Vec& v = table.vector_at(i);
    for (size_t k = 0; k < v.size(); ++k) {
      out += ' ';
      out += format_double(v[k]);
    }
    out += '\n';
  }
  atomic_write_file(path, out);
}

SimilarityDataset parse_similarity_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  SimilarityDataset dataset;
  dataset.name = path_stem(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) {
      throw parse_error(path, i + 1, "expected 'word1 word2 score'");
    }
    SimilarityPair pair;
    pair.word1 = tokens[0];
    pair.word2 = tokens[1];
    if (!parse_double_token(tokens[2], &pair.score)) {
      throw parse_error(path, i + 1, "bad score '" + tokens[2] + "'");
    }
    dataset.pairs.push_back(std::move(pair));
  }
  if (dataset.pairs.empty()) {
    throw std::runtime_error(path + ": no similarity pairs");
  }
  return dataset;
}

void write_similarity_file(const std::string& path,
                           const SimilarityDataset& dataset) {
  std::string out;
  for (const auto& pair : dataset.pairs) {
    out += pair.word1;
    out += '\t';
    out += pair.word2;
    out += '\t';
    out += format_double(pair.score);
    out += '\n';
  }
  atomic_write_file(path, out);
}

AnalogyDataset parse_analogy_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  AnalogyDataset dataset;
  dataset.name = path_stem(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (!lines[i].empty() && lines[i][0] == ':') continue;
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != 4) {
      throw parse_error(path, i + 1, "expected 'a b c d'");
    }
    dataset.questions.push_back({tokens[0], tokens[1], tokens[2], tokens[3]});
  }
  if (dataset.questions.empty()) {
    throw std::runtime_error(path + ": no analogy questions");
  }
  return dataset;
}

void write_analogy_file(const std::string& path,
                        const AnalogyDataset& dataset) {
  std::string out = ": " + (dataset.name.empty() ? "analogy" : dataset.name) +
                    "\n";
  for (const auto& q : dataset.questions) {
    out += q.a;
    out += ' ';
    out += q.b;
    out += ' ';
    out += q.c;
    out += ' ';
    out += q.d;
    out += '\n';
  }
  atomic_write_file(path, out);
}

TaggedCorpus parse_tagged_corpus(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<std::vector<std::pair<std::string, std::string>>> sentences;
  std::vector<std::pair<std::string, std::string>> current;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) {
      if (!current.empty()) {
        sentences.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw parse_error(path, i + 1, "expected 'token<TAB>tag'");
    }
    current.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  if (sentences.empty()) {
    throw std::runtime_error(path + ": no sentences");
  }
  return TaggedCorpus::from_sentences(std::move(sentences));
}

void write_tagged_corpus(const std::string& path, const TaggedCorpus& corpus) {
  std::string out;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& [token, tag] : sentence) {
      out += token;
      out += '\t';
      out += tag;
      out += '\n';
    }
    out += '\n';
  }
  atomic_write_file(path, out);
}

std::vector<std::string> parse_word_list(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  std::vector<std::string> words;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    // a word list may also be the first column of an embedding file,
    // so skip a leading count/dim header
    if (i == 0 && tokens.size() == 2) {
      size_t a = 0, b = 0;
      if (parse_uint_token(tokens[0], &a) && parse_uint_token(tokens[1], &b)) {
        continue;
      }
    }
    words.push_back(tokens[0]);
  }
  if (words.empty()) {
    throw std::runtime_error(path + ": no words");
  }
  return words;
}

void write_word_list(const std::string& path,
                     const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    out += w;
    out += '\n';
  }
  atomic_write_file(path, out);
}

}  // namespace charec
