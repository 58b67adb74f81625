#include "charec/gradcheck.hpp"

#include <cmath>
#include <stdexcept>

namespace charec {

Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& x,
                     double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("finite_diff_grad: eps must be positive");
  }
  Vec grad(x.size());
  Vec probe = x;
  for (size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double up = f(probe);
    probe[i] = x[i] - eps;
    const double down = f(probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

std::vector<double> finite_diff_grad_inplace(const std::function<double()>& f,
                                             std::span<double> x, double eps) {
  std::vector<double> grad(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double up = f();
    x[i] = saved - eps;
    const double down = f();
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

double max_rel_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("max_rel_error: size mismatch");
  }
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({1.0, std::fabs(a[i]), std::fabs(b[i])});
    worst = std::max(worst, std::fabs(a[i] - b[i]) / denom);
  }
  return worst;
}

}  // namespace charec
