#pragma once

#include <span>
#include <vector>

#include "charec/rng.hpp"
#include "charec/tensor.hpp"

namespace charec {

double sigmoid(double x);

// One LSTM direction: standard formulation, no peepholes. Gate order in
// tensors() is input, forget, output, candidate.
struct LstmCellParams {
  Mat w_xi, w_hi;
  Vec b_i;
  Mat w_xf, w_hf;
  Vec b_f;
  Mat w_xo, w_ho;
  Vec b_o;
  Mat w_xg, w_hg;
  Vec b_g;

  LstmCellParams() = default;
  LstmCellParams(size_t hidden, size_t input);  // all zeros

  // Glorot-uniform weights, zero biases except forget bias = 1.
  static LstmCellParams init(size_t hidden, size_t input, Rng& rng);

  size_t hidden_size() const { return b_i.size(); }
  size_t input_size() const { return w_xi.cols(); }
  std::vector<std::span<double>> tensors();
  void zero();
};

struct LstmState {
  Vec h, c;
  explicit LstmState(size_t hidden) : h(hidden), c(hidden) {}
  LstmState() = default;
};

// Everything the backward pass needs from one forward step.
struct LstmStepCache {
  Vec x, h_prev, c_prev;
  Vec i, f, o, g;
  Vec c, tanh_c;
};

// h' = o . tanh(c'), c' = f . c + i . g with sigmoid gates and tanh
// candidate. Throws if any output is non-finite.
LstmState lstm_step(const LstmCellParams& params, const Vec& x,
                    const LstmState& prev, LstmStepCache* cache = nullptr);

struct LstmInputGrads {
  Vec dx, dh_prev, dc_prev;
};

// Backward through one step. dh/dc are the gradients arriving at this step's
// outputs; parameter gradients accumulate into `grads` (same shape struct).
LstmInputGrads lstm_step_backward(const LstmCellParams& params,
                                  const LstmStepCache& cache, const Vec& dh,
                                  const Vec& dc, LstmCellParams& grads);

}  // namespace charec
