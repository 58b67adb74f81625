#pragma once

#include <functional>
#include <span>
#include <vector>

#include "charec/tensor.hpp"

namespace charec {

// Central finite differences (f(x+eps*e_i) - f(x-eps*e_i)) / (2*eps).
Vec finite_diff_grad(const std::function<double(const Vec&)>& f, const Vec& x,
                     double eps);

// Same, but perturbs a parameter tensor in place; f() re-runs the forward
// pass against whatever the tensor currently holds. The tensor is restored.
std::vector<double> finite_diff_grad_inplace(const std::function<double()>& f,
                                             std::span<double> x, double eps);

// max_i |a_i - b_i| / max(1, |a_i|, |b_i|). The unit floor keeps noise in
// near-zero coordinates from dominating.
double max_rel_error(std::span<const double> a, std::span<const double> b);

}  // namespace charec
