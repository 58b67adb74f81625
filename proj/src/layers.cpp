#include "charec/layers.hpp"

#include <stdexcept>
#include <string>

#include "charec/lstm.hpp"

namespace charec {

Vec highway_combine(const Mat& w, const Vec& b, const Vec& h, const Vec& z,
                    HighwayCache* cache) {
  const size_t d = h.size();
  if (z.size() != d || b.size() != d || w.rows() != d || w.cols() != d) {
    throw std::invalid_argument("highway_combine: dimension mismatch");
  }
  Vec a = matvec(w, h);
  add_in_place(a, b);
  Vec t(d), out(d);
  for (size_t k = 0; k < d; ++k) {
    t[k] = sigmoid(a[k]);
    out[k] = t[k] * h[k] + (1.0 - t[k]) * z[k];
  }
  if (cache != nullptr) {
    cache->h = h;
    cache->z = z;
    cache->t = std::move(t);
  }
  return out;
}

HighwayInputGrads highway_backward(const Mat& w, const HighwayCache& cache,
                                   const Vec& dout, Mat& dw, Vec& db) {
  const size_t d = dout.size();
  Vec da(d);
  HighwayInputGrads out;
  out.dz = Vec(d);
  for (size_t k = 0; k < d; ++k) {
    const double t = cache.t[k];
    const double dt = dout[k] * (cache.h[k] - cache.z[k]);
    da[k] = dt * t * (1.0 - t);
    out.dz[k] = dout[k] * (1.0 - t);
  }
  add_outer(dw, da, cache.h);
  add_in_place(db, da);
  out.dh = matvec_transpose(w, da);
  for (size_t k = 0; k < d; ++k) out.dh[k] += dout[k] * cache.t[k];
  return out;
}

Vec dropout_mask(size_t n, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw std::invalid_argument("dropout: rate must be in [0, 1), got " +
                                std::to_string(rate));
  }
  Vec mask(n, 1.0);
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  for (size_t k = 0; k < n; ++k) {
    mask[k] = rng.uniform() < rate ? 0.0 : keep_scale;
  }
  return mask;
}

Vec dropout_apply(const Vec& v, double rate, Rng& rng, bool training) {
  if (rate < 0.0 || rate >= 1.0) {
    throw std::invalid_argument("dropout: rate must be in [0, 1), got " +
                                std::to_string(rate));
  }
  if (!training || rate == 0.0) return v;
  return hadamard(v, dropout_mask(v.size(), rate, rng));
}

}  // namespace charec
