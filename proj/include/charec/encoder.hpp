#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charec/char_vocab.hpp"
#include "charec/embedding_table.hpp"
#include "charec/layers.hpp"
#include "charec/lstm.hpp"
#include "charec/rng.hpp"

namespace charec {

// Character-level word encoder: a forward and a backward character LSTM whose
// final states are projected and summed, then rectified, optionally followed
// by a highway layer. The character embedding dimension equals the output
// dimension d by construction.
struct CharEncoderParams {
  Mat char_emb;  // (|C| + 1) x d, last row is UNK
  LstmCellParams fwd, bwd;
  Mat w_fwd, w_bwd;  // d x d
  Vec bias;          // d
  bool use_highway = false;
  Mat w_hw;  // d x d, allocated only when use_highway
  Vec b_hw;  // d

  CharEncoderParams() = default;

  static CharEncoderParams init(size_t vocab_rows, size_t dim,
                                bool use_highway, Rng& rng);
  static CharEncoderParams zeros(size_t vocab_rows, size_t dim,
                                 bool use_highway);

  size_t dim() const { return bias.size(); }
  size_t vocab_rows() const { return char_emb.rows(); }
  std::vector<std::span<double>> tensors();
  void zero();
  void validate() const;

  bool operator==(const CharEncoderParams&) const = default;
};

struct WordEncoding {
  Vec z;                      // pre-activation
  Vec h;                      // ReLU(z)
  std::optional<Vec> h_hw;    // highway output, present iff use_highway

  // The vector fed to losses and evaluation.
  const Vec& student() const { return h_hw.has_value() ? *h_hw : h; }
};

struct EncodeCache {
  std::vector<size_t> char_idx;
  std::vector<Vec> mask_fwd, mask_bwd;  // empty when no dropout was applied
  std::vector<LstmStepCache> fwd_steps;  // left to right
  std::vector<LstmStepCache> bwd_steps;  // right to left, execution order
  Vec f_last, b_first;
  Vec z;
  HighwayCache hw;
};

// Dropout is applied to the LSTM input vectors only, and only when training.
// Unseen characters map to the UNK row. Throws on an empty word.
WordEncoding encode_word(const CharEncoderParams& params,
                         const std::string& word, const CharVocab& vocab,
                         bool training = false, Rng* rng = nullptr,
                         double dropout_rate = 0.0,
                         EncodeCache* cache = nullptr);

// d_student is dL/d(student vector); parameter gradients accumulate.
void encode_word_backward(const CharEncoderParams& params,
                          const EncodeCache& cache, const Vec& d_student,
                          CharEncoderParams& grads);

// Inference-mode encodings for a word list (duplicates collapse). Words may
// be encoded on several threads; the result is identical either way.
EmbeddingTable encode_vocab(const CharEncoderParams& params,
                            const std::vector<std::string>& words,
                            const CharVocab& vocab, unsigned threads = 1);

// Sets the UNK embedding row to the mean of all trained character rows.
// Called when a trained encoder is frozen into a checkpoint.
void set_unk_row_to_mean(CharEncoderParams& params);

}  // namespace charec
