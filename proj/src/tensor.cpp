#include "charec/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace charec {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_same_size(const Vec& a, const Vec& b, const char* op) {
  require(a.size() == b.size(),
          std::string(op) + ": size mismatch " + std::to_string(a.size()) +
              " vs " + std::to_string(b.size()));
}

}  // namespace

Vec Mat::row_vec(size_t r) const {
  Vec out(cols_);
  for (size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
  return out;
}

void Mat::set_row(size_t r, const Vec& x) {
  require(x.size() == cols_, "Mat::set_row: size mismatch");
  for (size_t c = 0; c < cols_; ++c) (*this)(r, c) = x[c];
}

void Mat::add_to_row(size_t r, const Vec& x) {
  require(x.size() == cols_, "Mat::add_to_row: size mismatch");
  for (size_t c = 0; c < cols_; ++c) (*this)(r, c) += x[c];
}

Vec add(const Vec& a, const Vec& b) {
  check_same_size(a, b, "add");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  check_same_size(a, b, "sub");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec hadamard(const Vec& a, const Vec& b) {
  check_same_size(a, b, "hadamard");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Vec scaled(const Vec& a, double s) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

void add_in_place(Vec& a, const Vec& b) {
  check_same_size(a, b, "add_in_place");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void axpy(double alpha, const Vec& x, Vec& y) {
  check_same_size(x, y, "axpy");
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double dot(const Vec& a, const Vec& b) {
  check_same_size(a, b, "dot");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec concat(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[a.size() + i] = b[i];
  return out;
}

bool all_finite(std::span<const double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vec matvec(const Mat& m, const Vec& x) {
  require(m.cols() == x.size(),
          "matvec: matrix cols " + std::to_string(m.cols()) +
              " vs vector size " + std::to_string(x.size()));
  Vec out(m.rows());
  const double* md = m.data();
  for (size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    const double* row = md + r * m.cols();
    for (size_t c = 0; c < m.cols(); ++c) s += row[c] * x[c];
    out[r] = s;
  }
  return out;
}

Vec matvec_transpose(const Mat& m, const Vec& x) {
  require(m.rows() == x.size(),
          "matvec_transpose: matrix rows " + std::to_string(m.rows()) +
              " vs vector size " + std::to_string(x.size()));
  Vec out(m.cols());
  const double* md = m.data();
  for (size_t r = 0; r < m.rows(); ++r) {
    const double xr = x[r];
    const double* row = md + r * m.cols();
    for (size_t c = 0; c < m.cols(); ++c) out[c] += row[c] * xr;
  }
  return out;
}

void add_outer(Mat& m, const Vec& a, const Vec& b) {
  require(m.rows() == a.size() && m.cols() == b.size(),
          "add_outer: shape mismatch");
  double* md = m.data();
  for (size_t r = 0; r < a.size(); ++r) {
    double* row = md + r * m.cols();
    const double ar = a[r];
    for (size_t c = 0; c < b.size(); ++c) row[c] += ar * b[c];
  }
}

}  // namespace charec
