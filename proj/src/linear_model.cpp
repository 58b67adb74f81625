#include "charec/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charec/embedding_table.hpp"

namespace charec {

void LinearModelProblem::validate() const {
  if (design.rows() == 0 || targets.rows() == 0) {
    throw std::invalid_argument("LinearModelProblem: empty problem");
  }
  if (design.rows() != targets.rows()) {
    throw std::invalid_argument("LinearModelProblem: design has " +
                                std::to_string(design.rows()) +
                                " rows, targets " +
                                std::to_string(targets.rows()));
  }
}

double lad_uniform_oracle(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("lad_uniform_oracle: empty input");
  }
  const size_t mid = (values.size() - 1) / 2;  // lower median
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  return values[mid];
}

namespace {

// Solves (Z^T Z) A = B for A by Gaussian elimination with partial pivoting.
Mat solve_spd(Mat lhs, Mat rhs) {
  const size_t n = lhs.rows();
  double max_abs = 0.0;
  for (size_t i = 0; i < lhs.size(); ++i) {
    max_abs = std::max(max_abs, std::fabs(lhs.data()[i]));
  }
  const double tol = std::max(1e-12 * max_abs, 1e-300);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::fabs(lhs(r, col)) > std::fabs(lhs(pivot, col))) pivot = r;
    }
    if (std::fabs(lhs(pivot, col)) <= tol) {
      throw std::domain_error(
          "ols_closed_form: design matrix is rank deficient");
    }
    if (pivot != col) {
      for (size_t c = 0; c < n; ++c) std::swap(lhs(col, c), lhs(pivot, c));
      for (size_t c = 0; c < rhs.cols(); ++c)
        std::swap(rhs(col, c), rhs(pivot, c));
    }
    const double inv = 1.0 / lhs(col, col);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = lhs(r, col) * inv;
      if (factor == 0.0) continue;
      for (size_t c = col; c < n; ++c) lhs(r, c) -= factor * lhs(col, c);
      for (size_t c = 0; c < rhs.cols(); ++c)
        rhs(r, c) -= factor * rhs(col, c);
    }
  }
  for (size_t r = 0; r < n; ++r) {
    const double inv = 1.0 / lhs(r, r);
    for (size_t c = 0; c < rhs.cols(); ++c) rhs(r, c) *= inv;
  }
  return rhs;
}

}  // namespace

Mat ols_closed_form(const LinearModelProblem& problem) {
  problem.validate();
  const Mat& z = problem.design;
  const Mat& x = problem.targets;
  const size_t dp = z.cols();
  Mat ztz(dp, dp);
  for (size_t a = 0; a < dp; ++a) {
    for (size_t b = 0; b < dp; ++b) {
      double s = 0.0;
      for (size_t w = 0; w < z.rows(); ++w) s += z(w, a) * z(w, b);
      ztz(a, b) = s;
    }
  }
  Mat ztx(dp, x.cols());
  for (size_t a = 0; a < dp; ++a) {
    for (size_t c = 0; c < x.cols(); ++c) {
      double s = 0.0;
      for (size_t w = 0; w < z.rows(); ++w) s += z(w, a) * x(w, c);
      ztx(a, c) = s;
    }
  }
  return solve_spd(std::move(ztz), std::move(ztx));
}

Mat minimize_linear_gd(const LinearModelProblem& problem, DistanceMetric metric,
                       double lr, size_t iters, const Mat* init) {
  problem.validate();
  const size_t dp = problem.design.cols();
  const size_t d = problem.targets.cols();
  Mat theta = init != nullptr ? *init : Mat(dp, d);
  for (size_t it = 0; it < iters; ++it) {
    Mat grad(dp, d);
    for (size_t w = 0; w < problem.design.rows(); ++w) {
      const Vec z = problem.design.row_vec(w);
      const Vec target = problem.targets.row_vec(w);
      Vec pred = matvec_transpose(theta, z);
      const Vec dpred = distance_grad(metric, target, pred);
      add_outer(grad, z, dpred);
    }
    for (size_t i = 0; i < theta.size(); ++i) {
      theta.data()[i] -= lr * grad.data()[i];
    }
  }
  return theta;
}

LinearModel::LinearModel(const LinearModelProblem& problem)
    : problem_(&problem), theta_(problem.design.cols(), problem.targets.cols()),
      grads_(problem.design.cols(), problem.targets.cols()) {
  problem.validate();
}

std::string LinearModel::word_key(size_t row) {
  return "w" + std::to_string(row);
}

Vec LinearModel::forward(const std::string& word, bool /*training*/,
                         Rng& /*rng*/, double /*dropout_rate*/) {
  if (word.size() < 2 || word[0] != 'w') {
    throw std::invalid_argument("LinearModel: bad word key '" + word + "'");
  }
  last_row_ = static_cast<size_t>(std::stoull(word.substr(1)));
  if (last_row_ >= problem_->design.rows()) {
    throw std::out_of_range("LinearModel: row " + std::to_string(last_row_) +
                            " out of range");
  }
  return matvec_transpose(theta_, problem_->design.row_vec(last_row_));
}

void LinearModel::backward(const Vec& d_out) {
  add_outer(grads_, problem_->design.row_vec(last_row_), d_out);
}

EmbeddingTable linear_targets_table(const LinearModelProblem& problem) {
  problem.validate();
  EmbeddingTable table;
  for (size_t w = 0; w < problem.targets.rows(); ++w) {
    table.insert(LinearModel::word_key(w), problem.targets.row_vec(w));
  }
  return table;
}

}  // namespace charec
