#pragma once

#include <string>

#include "charec/encoder.hpp"
#include "charec/reconstruct.hpp"
#include "charec/tagger.hpp"

namespace charec {

inline constexpr uint32_t kCheckpointVersion = 1;

// Trained encoder frozen to disk: magic + version, dimensions, training
// config, character vocab, and all parameter tensors as little-endian
// 32-bit floats. save -> load -> save is byte-identical.
struct Checkpoint {
  TrainConfig config;
  CharVocab vocab;
  CharEncoderParams params;
};

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

void save_tagger_model(const std::string& path, const TaggerModel& model);
TaggerModel load_tagger_model(const std::string& path);

}  // namespace charec
