#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace charec {

// Dense double-precision vector. Size is fixed at construction; all
// arithmetic checks dimension agreement and throws std::invalid_argument.
class Vec {
 public:
  Vec() = default;
  explicit Vec(size_t n, double fill = 0.0) : v_(n, fill) {}
  Vec(std::initializer_list<double> init) : v_(init) {}

  size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  double& operator[](size_t i) { return v_[i]; }
  double operator[](size_t i) const { return v_[i]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<double> span() { return v_; }
  std::span<const double> span() const { return v_; }
  void fill(double x) { v_.assign(v_.size(), x); }

  bool operator==(const Vec&) const = default;

 private:
  std::vector<double> v_;
};

// Dense row-major matrix, same conventions as Vec.
class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  double& operator()(size_t r, size_t c) { return v_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return v_[r * cols_ + c]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<double> span() { return v_; }
  std::span<const double> span() const { return v_; }
  void fill(double x) { v_.assign(v_.size(), x); }

  std::span<const double> row(size_t r) const {
    return std::span<const double>(v_.data() + r * cols_, cols_);
  }
  Vec row_vec(size_t r) const;
  void set_row(size_t r, const Vec& x);
  void add_to_row(size_t r, const Vec& x);

  bool operator==(const Mat&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> v_;
};

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec hadamard(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
void add_in_place(Vec& a, const Vec& b);
void axpy(double alpha, const Vec& x, Vec& y);  // y += alpha * x
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec concat(const Vec& a, const Vec& b);
bool all_finite(std::span<const double> xs);

Vec matvec(const Mat& m, const Vec& x);            // m * x
Vec matvec_transpose(const Mat& m, const Vec& x);  // m^T * x
void add_outer(Mat& m, const Vec& a, const Vec& b);  // m += a * b^T

}  // namespace charec
