#include "charec/embedding_table.hpp"

#include <stdexcept>

namespace charec {

void EmbeddingTable::insert(const std::string& word, Vec vector) {
  if (word.empty()) {
    throw std::invalid_argument("EmbeddingTable: empty word");
  }
  if (index_.contains(word)) {
    throw std::invalid_argument("EmbeddingTable: duplicate word '" + word +
                                "'");
  }
  if (words_.empty()) {
    if (vector.empty()) {
      throw std::invalid_argument("EmbeddingTable: empty vector");
    }
    dim_ = vector.size();
  } else if (vector.size() != dim_) {
    throw std::invalid_argument(
        "EmbeddingTable: vector for '" + word + "' has dimension " +
        std::to_string(vector.size()) + ", table dimension is " +
        std::to_string(dim_));
  }
  index_.emplace(word, words_.size());
  words_.push_back(word);
  vectors_.push_back(std::move(vector));
}

bool EmbeddingTable::contains(const std::string& word) const {
  return index_.contains(word);
}

const Vec& EmbeddingTable::at(const std::string& word) const {
  auto it = index_.find(word);
  if (it == index_.end()) {
    throw std::out_of_range("EmbeddingTable: no entry for '" + word + "'");
  }
  return vectors_[it->second];
}

const Vec* EmbeddingTable::find(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

}  // namespace charec
