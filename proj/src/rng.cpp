#include "charec/rng.hpp"

#include <cmath>

namespace charec {

uint64_t stable_hash64(std::string_view bytes) {
  // FNV-1a. std::hash is not stable across implementations.
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
  // splitmix64 finalizer over the combined state.
  uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) : seed_(seed), engine_(seed) {}

uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

size_t Rng::uniform_index(size_t n) {
  if (n <= 1) return 0;
  // Rejection sampling against the smallest covering power of two.
  uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  uint64_t draw = 0;
  do {
    draw = next_u64() & mask;
  } while (draw >= n);
  return static_cast<size_t>(draw);
}

Rng Rng::derive(std::string_view label) const {
  return Rng(mix_seed(seed_, stable_hash64(label)));
}

Rng Rng::derive(std::string_view label, uint64_t index) const {
  return Rng(mix_seed(mix_seed(seed_, stable_hash64(label)), index));
}

}  // namespace charec
