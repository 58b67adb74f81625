#include "charec/char_vocab.hpp"

#include <algorithm>
#include <stdexcept>

namespace charec {

void CharVocab::rebuild_index() {
  index_ = make_empty_index();
  for (size_t i = 0; i < chars_.size(); ++i) {
    index_[chars_[i]] = static_cast<int>(i);
  }
}

CharVocab CharVocab::build(const std::vector<std::string>& words) {
  if (words.empty()) {
    throw std::invalid_argument("CharVocab::build: empty word list");
  }
  std::array<bool, 256> seen{};
  for (const auto& w : words) {
    for (unsigned char c : w) seen[c] = true;
  }
  std::vector<unsigned char> chars;
  for (size_t c = 0; c < 256; ++c) {
    if (seen[c]) chars.push_back(static_cast<unsigned char>(c));
  }
  return from_chars(std::move(chars));
}

CharVocab CharVocab::from_chars(std::vector<unsigned char> chars) {
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  CharVocab vocab;
  vocab.chars_ = std::move(chars);
  vocab.rebuild_index();
  return vocab;
}

CharVocab CharVocab::merge(const CharVocab& a, const CharVocab& b) {
  std::vector<unsigned char> chars = a.chars_;
  chars.insert(chars.end(), b.chars_.begin(), b.chars_.end());
  return from_chars(std::move(chars));
}

std::vector<size_t> CharVocab::encode(const std::string& word) const {
  std::vector<size_t> out;
  out.reserve(word.size());
  for (unsigned char c : word) out.push_back(index_of(c));
  return out;
}

}  // namespace charec
