#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace charec {

uint64_t stable_hash64(std::string_view bytes);
uint64_t mix_seed(uint64_t a, uint64_t b);

// Splittable deterministic RNG. Every stream is derived from a root seed and
// a label, so no component ever shares a global engine. The raw draws are
// hand-rolled on top of mt19937_64 because the standard distributions are
// implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  double uniform();                        // [0, 1)
  double uniform(double lo, double hi);
  double normal();                         // standard normal (Box-Muller)
  size_t uniform_index(size_t n);          // [0, n), unbiased

  // Child stream fully determined by (root seed, label[, index]).
  Rng derive(std::string_view label) const;
  Rng derive(std::string_view label, uint64_t index) const;

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_index(i)]);
    }
  }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_ = 0;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace charec
