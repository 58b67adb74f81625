#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "charec/adam.hpp"
#include "charec/embedding_table.hpp"
#include "charec/encoder.hpp"
#include "charec/linear_model.hpp"
#include "charec/metrics.hpp"

namespace charec {

struct TrainConfig {
  DistanceMetric metric = DistanceMetric::D2;
  size_t epochs = 0;
  double learning_rate = 1e-3;
  double dropout = 0.0;
  uint64_t seed = 0;
  bool use_highway = false;
  size_t batch_size = 1;

  void validate() const;
};

// Per-epoch mean reconstruction loss (inference mode) and wall-clock time.
struct LossTrace {
  std::vector<double> mean_loss;
  std::vector<double> seconds;

  size_t epochs() const { return mean_loss.size(); }
};

inline constexpr double kGradClipNorm = 5.0;

// Sum over the vocabulary of D(x^w, student(w)), no dropout.
double reconstruction_loss(const CharEncoderParams& params,
                           const CharVocab& vocab,
                           const EmbeddingTable& teacher,
                           DistanceMetric metric);

// One pass of the shared training loop: shuffled word order reseeded per
// epoch from the master seed, per-batch Adam updates on the summed gradient,
// global-norm clipping at 5. Model is any type with the
// forward/backward/param_tensors/grad_tensors/zero_grads surface of
// LinearModel (see linear_model.hpp).
template <class Model>
LossTrace train_model(Model& model, const EmbeddingTable& teacher,
                      const TrainConfig& config) {
  config.validate();
  if (teacher.empty()) {
    throw std::invalid_argument("train_model: empty teacher table");
  }
  LossTrace trace;
  if (config.epochs == 0) return trace;

  AdamState adam(model.param_tensors());
  Rng master(config.seed);
  Rng dropout_rng = master.derive("dropout");
  Rng inference_rng(0);  // never drawn from

  auto mean_inference_loss = [&]() {
    double sum = 0.0;
    for (const auto& word : teacher.words()) {
      const Vec student = model.forward(word, false, inference_rng, 0.0);
      sum += distance(config.metric, teacher.at(word), student);
    }
    return sum / static_cast<double>(teacher.size());
  };

  model.zero_grads();
  for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> order = teacher.words();
    master.derive("shuffle", epoch).shuffle(order);

    size_t in_batch = 0;
    auto flush = [&]() {
      if (in_batch == 0) return;
      clip_global_norm(model.grad_tensors(), kGradClipNorm);
      adam.step(model.param_tensors(), model.grad_tensors(),
                config.learning_rate);
      model.zero_grads();
      in_batch = 0;
    };

    for (const auto& word : order) {
      const Vec student =
          model.forward(word, true, dropout_rng, config.dropout);
      const Vec& target = teacher.at(word);
      const double loss = distance(config.metric, target, student);
      if (!std::isfinite(loss)) {
        throw std::runtime_error("train_model: non-finite loss at epoch " +
                                 std::to_string(epoch) + ", word '" + word +
                                 "'");
      }
      model.backward(distance_grad(config.metric, target, student));
      if (++in_batch == config.batch_size) flush();
    }
    flush();

    trace.mean_loss.push_back(mean_inference_loss());
    trace.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());
  }
  return trace;
}

// LinearModel plugged into the loop above.
struct LinearTrainResult {
  Mat theta;
  LossTrace trace;
};
LinearTrainResult train_linear_model(const LinearModelProblem& problem,
                                     const TrainConfig& config,
                                     const Mat* init = nullptr);

// CharEncoderParams plugged into the loop above. epochs = 0 returns init
// bit-identically; the whole run is a pure function of (config, teacher,
// init).
struct ReconstructionResult {
  CharEncoderParams params;
  LossTrace trace;
};
ReconstructionResult train_reconstruction(const TrainConfig& config,
                                          const EmbeddingTable& teacher,
                                          const CharVocab& vocab,
                                          const CharEncoderParams& init);

}  // namespace charec
