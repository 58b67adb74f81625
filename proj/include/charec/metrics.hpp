#pragma once

#include <array>
#include <string>
#include <string_view>

#include "charec/tensor.hpp"

namespace charec {

// The five loss geometries used for reconstruction.
enum class DistanceMetric { D1, Dsqrt2, D2, Dinf, Dcos };

constexpr std::array<DistanceMetric, 5> kAllMetrics = {
    DistanceMetric::D1, DistanceMetric::Dsqrt2, DistanceMetric::D2,
    DistanceMetric::Dinf, DistanceMetric::Dcos};

// Stable names: d1 | dsqrt2 | d2 | dinf | dcos.
std::string to_string(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view name);

// Norm floor below which cosine-based quantities are treated as degenerate.
inline constexpr double kNormEps = 1e-12;

// D_1: sum |x_i - h_i|            (Manhattan)
// D_sqrt2: sqrt(sum (x_i - h_i)^2) (Euclidean)
// D_2: sum (x_i - h_i)^2          (squared error)
// D_inf: max |x_i - h_i|
// D_cos: -x.h / (|x||h|), in [-1, 1]; throws on a (near-)zero vector.
double distance(DistanceMetric metric, const Vec& x, const Vec& h);

// dD/dh with x held constant. Subgradient conventions: D1 ties -> 0; Dinf
// puts the whole subgradient on the lowest-index maximizing coordinate;
// Dsqrt2 at h == x -> zero vector.
Vec distance_grad(DistanceMetric metric, const Vec& x, const Vec& h);

}  // namespace charec
