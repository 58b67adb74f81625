#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace charec {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moment buffers are allocated against a fixed
// tensor list at construction; step() updates the parameters in place.
class AdamState {
 public:
  AdamState() = default;
  explicit AdamState(const std::vector<std::span<double>>& params,
                     AdamConfig config = {});

  // params/grads must match the construction shapes tensor by tensor.
  // Throws on a non-finite gradient, naming tensor and index.
  void step(const std::vector<std::span<double>>& params,
            const std::vector<std::span<double>>& grads, double lr);

  int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }

 private:
  std::vector<std::vector<double>> m_, v_;
  int64_t t_ = 0;
  AdamConfig config_;
};

// Scales grads down so their global L2 norm is at most max_norm.
// Returns the pre-clip norm.
double clip_global_norm(const std::vector<std::span<double>>& grads,
                        double max_norm);

void zero_all(const std::vector<std::span<double>>& tensors);

}  // namespace charec
