#pragma once

#include <span>
#include <string>
#include <vector>

#include "charec/metrics.hpp"
#include "charec/rng.hpp"
#include "charec/tensor.hpp"

namespace charec {

// Linear special case h_i = theta_i^T z, one feature row and one target row
// per word. Used as an analytic test bed for the distance losses.
struct LinearModelProblem {
  Mat design;   // |W| x d'
  Mat targets;  // |W| x d

  void validate() const;  // row counts must agree, both non-empty
};

// Minimizer of sum_w |t_w - p| over a scalar prediction p: the lower median
// (even counts take the smaller middle value).
double lad_uniform_oracle(std::vector<double> values);

// theta*_i = (Z^T Z)^{-1} Z^T x_(.,i), returned as a d' x d matrix of
// stacked columns. Throws std::domain_error if Z is rank deficient; there is
// deliberately no pseudo-inverse fallback.
Mat ols_closed_form(const LinearModelProblem& problem);

// Plain full-batch (sub)gradient descent on sum_w D(x^w, Theta^T z^w).
// Serves as the iterative cross-check for the closed forms above and stays
// independent of the Adam training path.
Mat minimize_linear_gd(const LinearModelProblem& problem, DistanceMetric metric,
                       double lr, size_t iters, const Mat* init = nullptr);

// Adapter so the generic epoch trainer can optimize the linear model exactly
// like the character encoder. Words are the synthetic keys below.
class LinearModel {
 public:
  explicit LinearModel(const LinearModelProblem& problem);

  Vec forward(const std::string& word, bool training, Rng& rng,
              double dropout_rate);
  void backward(const Vec& d_out);
  std::vector<std::span<double>> param_tensors() { return {theta_.span()}; }
  std::vector<std::span<double>> grad_tensors() { return {grads_.span()}; }
  void zero_grads() { grads_.fill(0.0); }

  const Mat& theta() const { return theta_; }
  Mat& theta() { return theta_; }

  static std::string word_key(size_t row);

 private:
  const LinearModelProblem* problem_;
  Mat theta_;  // d' x d
  Mat grads_;
  size_t last_row_ = 0;
};

// Targets table keyed by LinearModel::word_key, for feeding the trainer.
class EmbeddingTable;
EmbeddingTable linear_targets_table(const LinearModelProblem& problem);

}  // namespace charec
