#pragma once

#include "charec/rng.hpp"
#include "charec/tensor.hpp"

namespace charec {

struct HighwayCache {
  Vec h, z, t;
};

// Gated interpolation t.h + (1-t).z with t = sigmoid(w*h + b). A gate near
// zero routes the pre-activation z straight through.
Vec highway_combine(const Mat& w, const Vec& b, const Vec& h, const Vec& z,
                    HighwayCache* cache = nullptr);

struct HighwayInputGrads {
  Vec dh, dz;
};

HighwayInputGrads highway_backward(const Mat& w, const HighwayCache& cache,
                                   const Vec& dout, Mat& dw, Vec& db);

// Inverted-dropout mask: entries are 0 or 1/(1-rate). rate must be in [0, 1).
Vec dropout_mask(size_t n, double rate, Rng& rng);

// Training: zero each coordinate with probability `rate`, scale survivors by
// 1/(1-rate). Inference (training=false): identity.
Vec dropout_apply(const Vec& v, double rate, Rng& rng, bool training);

}  // namespace charec
