#include "charec/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace charec {

std::string to_string(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::D1: return "d1";
    case DistanceMetric::Dsqrt2: return "dsqrt2";
    case DistanceMetric::D2: return "d2";
    case DistanceMetric::Dinf: return "dinf";
    case DistanceMetric::Dcos: return "dcos";
  }
  throw std::invalid_argument("to_string: unknown metric");
}

DistanceMetric parse_metric(std::string_view name) {
  if (name == "d1") return DistanceMetric::D1;
  if (name == "dsqrt2") return DistanceMetric::Dsqrt2;
  if (name == "d2") return DistanceMetric::D2;
  if (name == "dinf") return DistanceMetric::Dinf;
  if (name == "dcos") return DistanceMetric::Dcos;
  throw std::invalid_argument("parse_metric: unknown metric '" +
                              std::string(name) +
                              "' (expected d1|dsqrt2|d2|dinf|dcos)");
}

namespace {

void check_pair(const Vec& x, const Vec& h) {
  if (x.size() != h.size()) {
    throw std::invalid_argument("distance: vector sizes " +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(h.size()));
  }
  if (x.empty()) throw std::invalid_argument("distance: empty vectors");
}

void check_cos_norms(double nx, double nh) {
  if (nx <= kNormEps || nh <= kNormEps) {
    throw std::domain_error(
        "dcos: degenerate input, vector norm below 1e-12");
  }
}

}  // namespace

double distance(DistanceMetric metric, const Vec& x, const Vec& h) {
  check_pair(x, h);
  const size_t d = x.size();
  switch (metric) {
    case DistanceMetric::D1: {
      double s = 0.0;
      for (size_t i = 0; i < d; ++i) s += std::fabs(x[i] - h[i]);
      return s;
    }
    case DistanceMetric::Dsqrt2:
      return norm2(sub(x, h));
    case DistanceMetric::D2: {
      double s = 0.0;
      for (size_t i = 0; i < d; ++i) {
        const double diff = x[i] - h[i];
        s += diff * diff;
      }
      return s;
    }
    case DistanceMetric::Dinf: {
      double m = 0.0;
      for (size_t i = 0; i < d; ++i) m = std::max(m, std::fabs(x[i] - h[i]));
      return m;
    }
    case DistanceMetric::Dcos: {
      const double nx = norm2(x);
      const double nh = norm2(h);
      check_cos_norms(nx, nh);
      return -dot(x, h) / (nx * nh);
    }
  }
  throw std::invalid_argument("distance: unknown metric");
}

Vec distance_grad(DistanceMetric metric, const Vec& x, const Vec& h) {
  check_pair(x, h);
  const size_t d = x.size();
  Vec grad(d);
  switch (metric) {
    case DistanceMetric::D1: {
      for (size_t i = 0; i < d; ++i) {
        const double diff = h[i] - x[i];
        grad[i] = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      }
      return grad;
    }
    case DistanceMetric::Dsqrt2: {
      Vec diff = sub(h, x);
      const double n = norm2(diff);
      if (n == 0.0) return grad;
      for (size_t i = 0; i < d; ++i) grad[i] = diff[i] / n;
      return grad;
    }
    case DistanceMetric::D2: {
      for (size_t i = 0; i < d; ++i) grad[i] = 2.0 * (h[i] - x[i]);
      return grad;
    }
    case DistanceMetric::Dinf: {
      size_t best = 0;
      double best_abs = -1.0;
      for (size_t i = 0; i < d; ++i) {
        const double a = std::fabs(h[i] - x[i]);
        if (a > best_abs) {
          best_abs = a;
          best = i;
        }
      }
      const double diff = h[best] - x[best];
      grad[best] = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
      return grad;
    }
    case DistanceMetric::Dcos: {
      const double nx = norm2(x);
      const double nh = norm2(h);
      check_cos_norms(nx, nh);
      const double cos = dot(x, h) / (nx * nh);
      for (size_t i = 0; i < d; ++i) {
        grad[i] = -x[i] / (nx * nh) + cos * h[i] / (nh * nh);
      }
      return grad;
    }
  }
  throw std::invalid_argument("distance_grad: unknown metric");
}

}  // namespace charec
