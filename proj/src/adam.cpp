#include "charec/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace charec {

AdamState::AdamState(const std::vector<std::span<double>>& params,
                     AdamConfig config)
    : config_(config) {
  m_.reserve(params.size());
  v_.reserve(params.size());
  for (const auto& p : params) {
    m_.emplace_back(p.size(), 0.0);
    v_.emplace_back(p.size(), 0.0);
  }
}

void AdamState::step(const std::vector<std::span<double>>& params,
                     const std::vector<std::span<double>>& grads, double lr) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::invalid_argument("adam_step: tensor count mismatch");
  }
  if (!(lr > 0.0)) {
    throw std::invalid_argument("adam_step: learning rate must be positive");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (size_t j = 0; j < params.size(); ++j) {
    auto p = params[j];
    auto g = grads[j];
    if (p.size() != m_[j].size() || g.size() != m_[j].size()) {
      throw std::invalid_argument("adam_step: tensor " + std::to_string(j) +
                                  " shape mismatch");
    }
    auto& m = m_[j];
    auto& v = v_[j];
    for (size_t k = 0; k < p.size(); ++k) {
      if (!std::isfinite(g[k])) {
        throw std::runtime_error("adam_step: non-finite gradient in tensor " +
                                 std::to_string(j) + " at index " +
                                 std::to_string(k));
      }
      m[k] = config_.beta1 * m[k] + (1.0 - config_.beta1) * g[k];
      v[k] = config_.beta2 * v[k] + (1.0 - config_.beta2) * g[k] * g[k];
      const double m_hat = m[k] / bc1;
      const double v_hat = v[k] / bc2;
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + config_.eps);
    }
  }
}

double clip_global_norm(const std::vector<std::span<double>>& grads,
                        double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads) {
    for (double x : g) sq += x * x;
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (const auto& g : grads) {
      for (double& x : g) x *= scale;
    }
  }
  return norm;
}

void zero_all(const std::vector<std::span<double>>& tensors) {
  for (const auto& t : tensors) {
    for (double& x : t) x = 0.0;
  }
}

}  // namespace charec
