#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "charec/tensor.hpp"

namespace charec {

// Word -> fixed-dimension vector map. Insertion order is preserved so file
// round trips are byte-stable; duplicate words are rejected.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  void insert(const std::string& word, Vec vector);
  bool contains(const std::string& word) const;
  const Vec& at(const std::string& word) const;  // throws on missing word
  const Vec* find(const std::string& word) const;

  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  size_t dim() const { return dim_; }
  const std::vector<std::string>& words() const { return words_; }
  const Vec& vector_at(size_t i) const { return vectors_[i]; }

  bool operator==(const EmbeddingTable& other) const {
    return dim_ == other.dim_ && words_ == other.words_ &&
           vectors_ == other.vectors_;
  }

 private:
  size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<Vec> vectors_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace charec
