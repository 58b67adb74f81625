#include "charec/reconstruct.hpp"

namespace charec {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("TrainConfig: learning rate must be > 0");
  }
  if (dropout < 0.0 || dropout >= 1.0) {
    throw std::invalid_argument("TrainConfig: dropout must be in [0, 1)");
  }
  if (batch_size == 0) {
    throw std::invalid_argument("TrainConfig: batch size must be >= 1");
  }
}

double reconstruction_loss(const CharEncoderParams& params,
                           const CharVocab& vocab,
                           const EmbeddingTable& teacher,
                           DistanceMetric metric) {
  if (teacher.empty()) {
    throw std::invalid_argument("reconstruction_loss: empty teacher table");
  }
  double sum = 0.0;
  for (const auto& word : teacher.words()) {
    const WordEncoding enc = encode_word(params, word, vocab);
    sum += distance(metric, teacher.at(word), enc.student());
  }
  return sum;
}

namespace {

class CharEncoderModel {
 public:
  CharEncoderModel(CharEncoderParams params, const CharVocab& vocab)
      : params_(std::move(params)),
        grads_(CharEncoderParams::zeros(params_.vocab_rows(), params_.dim(),
                                        params_.use_highway)),
        vocab_(&vocab) {}

  Vec forward(const std::string& word, bool training, Rng& rng,
              double dropout_rate) {
    const WordEncoding enc = encode_word(params_, word, *vocab_, training,
                                         &rng, dropout_rate, &cache_);
    return enc.student();
  }

  void backward(const Vec& d_out) {
    encode_word_backward(params_, cache_, d_out, grads_);
  }

  std::vector<std::span<double>> param_tensors() { return params_.tensors(); }
  std::vector<std::span<double>> grad_tensors() { return grads_.tensors(); }
  void zero_grads() { grads_.zero(); }

  CharEncoderParams take_params() { return std::move(params_); }

 private:
  CharEncoderParams params_;
  CharEncoderParams grads_;
  const CharVocab* vocab_;
  EncodeCache cache_;
};

}  // namespace

LinearTrainResult train_linear_model(const LinearModelProblem& problem,
                                     const TrainConfig& config,
                                     const Mat* init) {
  LinearModel model(problem);
  if (init != nullptr) {
    if (init->rows() != model.theta().rows() ||
        init->cols() != model.theta().cols()) {
      throw std::invalid_argument("train_linear_model: bad init shape");
    }
    model.theta() = *init;
  }
  const EmbeddingTable targets = linear_targets_table(problem);
  LossTrace trace = train_model(model, targets, config);
  return {model.theta(), std::move(trace)};
}

ReconstructionResult train_reconstruction(const TrainConfig& config,
                                          const EmbeddingTable& teacher,
                                          const CharVocab& vocab,
                                          const CharEncoderParams& init) {
  config.validate();
  init.validate();
  if (teacher.empty()) {
    throw std::invalid_argument("train_reconstruction: empty teacher table");
  }
  if (teacher.dim() != init.dim()) {
    throw std::invalid_argument(
        "train_reconstruction: teacher dimension " +
        std::to_string(teacher.dim()) + " does not match encoder dimension " +
        std::to_string(init.dim()));
  }
  if (config.epochs == 0) {
    return {init, LossTrace{}};
  }
  CharEncoderModel model(init, vocab);
  LossTrace trace = train_model(model, teacher, config);
  return {model.take_params(), std::move(trace)};
}

}  // namespace charec
