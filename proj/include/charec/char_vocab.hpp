#pragma once

#include <array>
#include <string>
#include <vector>

namespace charec {

// Character inventory with a reserved UNK row. Characters are bytes, kept in
// ascending byte order so the mapping is independent of insertion order.
class CharVocab {
 public:
  CharVocab() = default;

  // Distinct characters of the given words. Throws on an empty word list.
  static CharVocab build(const std::vector<std::string>& words);
  static CharVocab from_chars(std::vector<unsigned char> chars);
  static CharVocab merge(const CharVocab& a, const CharVocab& b);

  size_t size() const { return chars_.size(); }   // |C|, UNK excluded
  size_t rows() const { return chars_.size() + 1; }
  size_t unk_index() const { return chars_.size(); }
  size_t index_of(unsigned char c) const {        // UNK for unseen bytes
    const int i = index_[c];
    return i < 0 ? unk_index() : static_cast<size_t>(i);
  }
  bool contains(unsigned char c) const { return index_[c] >= 0; }
  const std::vector<unsigned char>& chars() const { return chars_; }

  std::vector<size_t> encode(const std::string& word) const;

  bool operator==(const CharVocab& other) const {
    return chars_ == other.chars_;
  }

 private:
  std::vector<unsigned char> chars_;
  std::array<int, 256> index_ = make_empty_index();

  static std::array<int, 256> make_empty_index() {
    std::array<int, 256> index{};
    index.fill(-1);
    return index;
  }
  void rebuild_index();
};

}  // namespace charec
