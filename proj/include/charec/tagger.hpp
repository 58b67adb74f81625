#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "charec/embedding_table.hpp"
#include "charec/encoder.hpp"
#include "charec/reconstruct.hpp"

namespace charec {

// Input representation for a token:
//   Full:    v^w = e^w (+) h^w, word lookup randomly initialized
//   FullEmb: same, lookup rows initialized from the pre-trained table
//   Chars:   v^w = h^w, characters only
//   CharD:   Chars, with the encoder initialized from a reconstruction
//            checkpoint
enum class TagMode { Full, FullEmb, Chars, CharD };

std::string to_string(TagMode mode);
TagMode parse_tag_mode(std::string_view name);

struct TaggedCorpus {
  // sentences of (token, tag)
  std::vector<std::vector<std::pair<std::string, std::string>>> sentences;
  std::vector<std::string> tag_set;  // sorted distinct tags

  static TaggedCorpus from_sentences(
      std::vector<std::vector<std::pair<std::string, std::string>>> sentences);

  int tag_index(const std::string& tag) const;  // -1 when unknown
  size_t token_count() const;
};

// Word lookup for the full modes; UNK is the extra last row.
struct WordVocab {
  std::vector<std::string> words;  // sorted
  std::unordered_map<std::string, size_t> index;

  static WordVocab build(const TaggedCorpus& corpus);
  size_t rows() const { return words.size() + 1; }
  size_t unk_row() const { return words.size(); }
  size_t row_of(const std::string& token) const;
  bool empty() const { return words.empty(); }
};

struct TaggerModel {
  TagMode mode = TagMode::Chars;
  std::vector<std::string> tags;
  CharVocab char_vocab;
  CharEncoderParams char_enc;
  WordVocab word_vocab;  // full modes only
  Mat word_emb;          // rows() x word_dim, empty in char modes
  LstmCellParams sent_fwd, sent_bwd;  // v_dim -> v_dim each direction
  Mat w_proj;            // d x 2*v_dim
  Vec b_proj;            // d
  Mat w1;                // d x d
  Vec b1;
  Mat w2;                // |T| x d
  Vec b2;

  bool uses_word_lookup() const {
    return mode == TagMode::Full || mode == TagMode::FullEmb;
  }
  size_t char_dim() const { return char_enc.dim(); }
  size_t word_dim() const { return word_emb.cols(); }
  size_t input_dim() const {
    return uses_word_lookup() ? word_dim() + char_dim() : char_dim();
  }
  std::vector<std::span<double>> tensors(bool include_char = true);
};

// Gradient buffers matching TaggerModel tensor for tensor.
struct TaggerGrads {
  CharEncoderParams char_enc;
  Mat word_emb;
  LstmCellParams sent_fwd, sent_bwd;
  Mat w_proj;
  Vec b_proj;
  Mat w1;
  Vec b1;
  Mat w2;
  Vec b2;

  static TaggerGrads zeros_like(const TaggerModel& model);
  std::vector<std::span<double>> tensors(bool include_char = true);
  void zero();
};

struct TaggerCache {
  std::vector<size_t> word_rows;
  std::vector<EncodeCache> char_caches;
  std::vector<Vec> v;                   // inputs before sentence-level dropout
  std::vector<Vec> mask_f, mask_b;      // sentence LSTM input masks
  std::vector<LstmStepCache> fwd_steps;  // position order
  std::vector<LstmStepCache> bwd_steps;  // execution order (right to left)
  std::vector<Vec> concat;
  std::vector<Vec> h;
  std::vector<Vec> a1, r1;
  std::vector<Vec> probs;
};

struct TaggerForwardOptions {
  bool training = false;
  Rng* rng = nullptr;
  double dropout = 0.0;
  // Training-time OOV regularization: singleton tokens are swapped for the
  // UNK row with this probability.
  const std::unordered_set<std::string>* singletons = nullptr;
  double unk_replace_prob = 0.5;
};

// Per-position distributions over the tag inventory; every row sums to 1.
// Inference never fails on unseen tokens (UNK word row, UNK characters).
std::vector<Vec> tagger_forward(const TaggerModel& model,
                                const std::vector<std::string>& tokens,
                                const TaggerForwardOptions& options = {},
                                TaggerCache* cache = nullptr);

double tagger_nll(const std::vector<Vec>& probs, const std::vector<int>& gold);

// Gradient of the summed negative log likelihood.
void tagger_backward(const TaggerModel& model, const TaggerCache& cache,
                     const std::vector<int>& gold, TaggerGrads& grads,
                     bool freeze_char = false);

struct TaggerTrainConfig {
  TagMode mode = TagMode::Chars;
  size_t epochs = 5;
  double learning_rate = 1e-3;
  double dropout = 0.0;
  uint64_t seed = 0;
  size_t dim = 16;       // char encoder dimension (CharD takes the checkpoint's)
  size_t word_dim = 0;   // 0 -> dim; FullEmb forces the teacher dimension
  bool use_highway = false;
  bool freeze_char = false;
  double unk_replace_prob = 0.5;

  void validate() const;
};

// Deterministic initialization; Full and FullEmb draw identical random
// tensors, FullEmb then overwrites lookup rows covered by the teacher.
TaggerModel init_tagger(const TaggerTrainConfig& config,
                        const TaggedCorpus& train,
                        const EmbeddingTable* pretrained = nullptr,
                        const CharEncoderParams* recon_params = nullptr,
                        const CharVocab* recon_vocab = nullptr);

// Adam over shuffled sentences, gradient clipping at global norm 5.
// epochs = 0 returns the initialization unchanged. If nll_trace is given it
// receives the mean training-set NLL per token after each epoch.
TaggerModel train_tagger(const TaggerTrainConfig& config,
                         const TaggedCorpus& train,
                         const EmbeddingTable* pretrained = nullptr,
                         const CharEncoderParams* recon_params = nullptr,
                         const CharVocab* recon_vocab = nullptr,
                         std::vector<double>* nll_trace = nullptr);

std::vector<std::string> tag_sentence(const TaggerModel& model,
                                      const std::vector<std::string>& tokens);

// Token-level argmax accuracy; ties break to the lowest tag index.
double tag_accuracy(const TaggerModel& model, const TaggedCorpus& corpus);

double corpus_mean_nll(const TaggerModel& model, const TaggedCorpus& corpus);

// Lookup rows actually stored: word rows (full modes) plus character rows.
size_t count_lookup_params(const TaggerModel& model);

struct GridCell {
  double learning_rate = 0.0;
  double dropout = 0.0;
  double dev_accuracy = 0.0;
};

struct GridSearchResult {
  std::vector<GridCell> cells;  // lr-major scan order
  GridCell best;
  TaggerModel best_model;
};

// Trains one model per (lr, dropout) pair and keeps the best dev accuracy.
GridSearchResult grid_search(const TaggerTrainConfig& base,
                             const std::vector<double>& learning_rates,
                             const std::vector<double>& dropouts,
                             const TaggedCorpus& train,
                             const TaggedCorpus& dev,
                             const EmbeddingTable* pretrained = nullptr,
                             const CharEncoderParams* recon_params = nullptr,
                             const CharVocab* recon_vocab = nullptr);

}  // namespace charec
