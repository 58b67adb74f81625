#include "charec/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace charec {

std::string to_string(TagMode mode) {
  switch (mode) {
    case TagMode::Full: return "full";
    case TagMode::FullEmb: return "full+emb";
    case TagMode::Chars: return "char";
    case TagMode::CharD: return "chard";
  }
  throw std::invalid_argument("to_string: unknown tag mode");
}

TagMode parse_tag_mode(std::string_view name) {
  if (name == "full") return TagMode::Full;
  if (name == "full+emb") return TagMode::FullEmb;
  if (name == "char") return TagMode::Chars;
  if (name == "chard") return TagMode::CharD;
  throw std::invalid_argument("parse_tag_mode: unknown mode '" +
                              std::string(name) +
                              "' (expected full|full+emb|char|chard)");
}

TaggedCorpus TaggedCorpus::from_sentences(
    std::vector<std::vector<std::pair<std::string, std::string>>> sentences) {
  std::set<std::string> tags;
  for (const auto& sentence : sentences) {
    if (sentence.empty()) {
      throw std::invalid_argument("TaggedCorpus: empty sentence");
    }
    for (const auto& [token, tag] : sentence) {
      if (token.empty() || tag.empty()) {
        throw std::invalid_argument("TaggedCorpus: empty token or tag");
      }
      tags.insert(tag);
    }
  }
  TaggedCorpus corpus;
  corpus.sentences = std::move(sentences);
  corpus.tag_set.assign(tags.begin(), tags.end());
  return corpus;
}

int TaggedCorpus::tag_index(const std::string& tag) const {
  const auto it = std::lower_bound(tag_set.begin(), tag_set.end(), tag);
  if (it == tag_set.end() || *it != tag) return -1;
  return static_cast<int>(it - tag_set.begin());
}

size_t TaggedCorpus::token_count() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

WordVocab WordVocab::build(const TaggedCorpus& corpus) {
  std::set<std::string> types;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& [token, tag] : sentence) types.insert(token);
  }
  WordVocab vocab;
  vocab.words.assign(types.begin(), types.end());
  for (size_t i = 0; i < vocab.words.size(); ++i) {
    vocab.index.emplace(vocab.words[i], i);
  }
  return vocab;
}

size_t WordVocab::row_of(const std::string& token) const {
  const auto it = index.find(token);
  return it == index.end() ? unk_row() : it->second;
}

std::vector<std::span<double>> TaggerModel::tensors(bool include_char) {
  std::vector<std::span<double>> out;
  if (include_char) {
    for (auto t : char_enc.tensors()) out.push_back(t);
  }
  if (uses_word_lookup()) out.push_back(word_emb.span());
  for (auto t : sent_fwd.tensors()) out.push_back(t);
  for (auto t : sent_bwd.tensors()) out.push_back(t);
  out.push_back(w_proj.span());
  out.push_back(b_proj.span());
  out.push_back(w1.span());
  out.push_back(b1.span());
  out.push_back(w2.span());
  out.push_back(b2.span());
  return out;
}

TaggerGrads TaggerGrads::zeros_like(const TaggerModel& model) {
  TaggerGrads g;
  g.char_enc = CharEncoderParams::zeros(model.char_enc.vocab_rows(),
                                        model.char_dim(),
                                        model.char_enc.use_highway);
  if (model.uses_word_lookup()) {
    g.word_emb = Mat(model.word_emb.rows(), model.word_emb.cols());
  }
  const size_t v = model.input_dim();
  const size_t d = model.char_dim();
  g.sent_fwd = LstmCellParams(v, v);
  g.sent_bwd = LstmCellParams(v, v);
  g.w_proj = Mat(d, 2 * v);
  g.b_proj = Vec(d);
  g.w1 = Mat(model.w1.rows(), model.w1.cols());
  g.b1 = Vec(model.b1.size());
  g.w2 = Mat(model.w2.rows(), model.w2.cols());
  g.b2 = Vec(model.b2.size());
  return g;
}

std::vector<std::span<double>> TaggerGrads::tensors(bool include_char) {
  std::vector<std::span<double>> out;
  if (include_char) {
    for (auto t : char_enc.tensors()) out.push_back(t);
  }
  if (!word_emb.empty()) out.push_back(word_emb.span());
  for (auto t : sent_fwd.tensors()) out.push_back(t);
  for (auto t : sent_bwd.tensors()) out.push_back(t);
  out.push_back(w_proj.span());
  out.push_back(b_proj.span());
  out.push_back(w1.span());
  out.push_back(b1.span());
  out.push_back(w2.span());
  out.push_back(b2.span());
  return out;
}

void TaggerGrads::zero() {
  for (auto t : tensors(true)) {
    for (double& x : t) x = 0.0;
  }
}

namespace {

Vec softmax(const Vec& logits) {
  double max_logit = logits[0];
  for (size_t i = 1; i < logits.size(); ++i) {
    max_logit = std::max(max_logit, logits[i]);
  }
  Vec p(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - max_logit);
    sum += p[i];
  }
  for (size_t i = 0; i < logits.size(); ++i) p[i] /= sum;
  return p;
}

}  // namespace

std::vector<Vec> tagger_forward(const TaggerModel& model,
                                const std::vector<std::string>& tokens,
                                const TaggerForwardOptions& options,
                                TaggerCache* cache) {
  if (tokens.empty()) {
    throw std::invalid_argument("tagger_forward: empty sentence");
  }
  const bool training = options.training;
  const bool use_dropout = training && options.dropout > 0.0;
  if (training && (use_dropout || options.singletons != nullptr) &&
      options.rng == nullptr) {
    throw std::invalid_argument("tagger_forward: training needs an rng");
  }
  const size_t n = tokens.size();
  const size_t v_dim = model.input_dim();
  const size_t d = model.char_dim();

  if (cache != nullptr) {
    cache->word_rows.clear();
    cache->char_caches.assign(n, EncodeCache{});
    cache->v.assign(n, Vec{});
    cache->mask_f.clear();
    cache->mask_b.clear();
    cache->fwd_steps.assign(n, LstmStepCache{});
    cache->bwd_steps.assign(n, LstmStepCache{});
    cache->concat.assign(n, Vec{});
    cache->h.assign(n, Vec{});
    cache->a1.assign(n, Vec{});
    cache->r1.assign(n, Vec{});
    cache->probs.assign(n, Vec{});
  }

  // Token representations.
  std::vector<Vec> v(n);
  for (size_t i = 0; i < n; ++i) {
    const WordEncoding enc = encode_word(
        model.char_enc, tokens[i], model.char_vocab, training, options.rng,
        options.dropout, cache != nullptr ? &cache->char_caches[i] : nullptr);
    if (model.uses_word_lookup()) {
      size_t row = model.word_vocab.row_of(tokens[i]);
      if (training && options.singletons != nullptr &&
          options.singletons->contains(tokens[i]) &&
          options.rng->uniform() < options.unk_replace_prob) {
        row = model.word_vocab.unk_row();
      }
      v[i] = concat(model.word_emb.row_vec(row), enc.student());
      if (cache != nullptr) cache->word_rows.push_back(row);
    } else {
      v[i] = enc.student();
    }
  }
  if (cache != nullptr) cache->v = v;

  // Sentence BiLSTM over (possibly dropped) inputs.
  std::vector<Vec> fwd_h(n), bwd_h(n);
  LstmState state(v_dim);
  for (size_t i = 0; i < n; ++i) {
    Vec input = v[i];
    if (use_dropout) {
      Vec mask = dropout_mask(v_dim, options.dropout, *options.rng);
      input = hadamard(input, mask);
      if (cache != nullptr) cache->mask_f.push_back(std::move(mask));
    }
    state = lstm_step(model.sent_fwd, input, state,
                      cache != nullptr ? &cache->fwd_steps[i] : nullptr);
    fwd_h[i] = state.h;
  }
  state = LstmState(v_dim);
  for (size_t k = 0; k < n; ++k) {
    const size_t i = n - 1 - k;
    Vec input = v[i];
    if (use_dropout) {
      Vec mask = dropout_mask(v_dim, options.dropout, *options.rng);
      input = hadamard(input, mask);
      if (cache != nullptr) cache->mask_b.push_back(std::move(mask));
    }
    state = lstm_step(model.sent_bwd, input, state,
                      cache != nullptr ? &cache->bwd_steps[k] : nullptr);
    bwd_h[i] = state.h;
  }

  // Local feedforward classifier at every position.
  std::vector<Vec> probs(n);
  for (size_t i = 0; i < n; ++i) {
    Vec joined = concat(fwd_h[i], bwd_h[i]);
    Vec h = matvec(model.w_proj, joined);
    add_in_place(h, model.b_proj);
    Vec a1 = matvec(model.w1, h);
    add_in_place(a1, model.b1);
    Vec r1(d);
    for (size_t j = 0; j < d; ++j) r1[j] = std::max(0.0, a1[j]);
    Vec logits = matvec(model.w2, r1);
    add_in_place(logits, model.b2);
    probs[i] = softmax(logits);
    if (cache != nullptr) {
      cache->concat[i] = std::move(joined);
      cache->h[i] = std::move(h);
      cache->a1[i] = std::move(a1);
      cache->r1[i] = std::move(r1);
      cache->probs[i] = probs[i];
    }
  }
  return probs;
}

double tagger_nll(const std::vector<Vec>& probs, const std::vector<int>& gold) {
  if (probs.size() != gold.size()) {
    throw std::invalid_argument("tagger_nll: length mismatch");
  }
  double nll = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (gold[i] < 0 || static_cast<size_t>(gold[i]) >= probs[i].size()) {
      throw std::invalid_argument("tagger_nll: tag index out of range");
    }
    nll -= std::log(std::max(probs[i][gold[i]], 1e-300));
  }
  return nll;
}

void tagger_backward(const TaggerModel& model, const TaggerCache& cache,
                     const std::vector<int>& gold, TaggerGrads& grads,
                     bool freeze_char) {
  const size_t n = cache.probs.size();
  if (gold.size() != n) {
    throw std::invalid_argument("tagger_backward: length mismatch");
  }
  const size_t v_dim = model.input_dim();
  const size_t d = model.char_dim();

  std::vector<Vec> d_fwd(n, Vec(v_dim)), d_bwd(n, Vec(v_dim));
  for (size_t i = 0; i < n; ++i) {
    Vec dlogits = cache.probs[i];
    dlogits[gold[i]] -= 1.0;

    add_outer(grads.w2, dlogits, cache.r1[i]);
    add_in_place(grads.b2, dlogits);
    Vec dr1 = matvec_transpose(model.w2, dlogits);
    Vec da1(d);
    for (size_t j = 0; j < d; ++j) {
      da1[j] = cache.a1[i][j] > 0.0 ? dr1[j] : 0.0;
    }
    add_outer(grads.w1, da1, cache.h[i]);
    add_in_place(grads.b1, da1);
    Vec dh = matvec_transpose(model.w1, da1);

    add_outer(grads.w_proj, dh, cache.concat[i]);
    add_in_place(grads.b_proj, dh);
    const Vec djoined = matvec_transpose(model.w_proj, dh);
    for (size_t j = 0; j < v_dim; ++j) {
      d_fwd[i][j] = djoined[j];
      d_bwd[i][j] = djoined[v_dim + j];
    }
  }

  std::vector<Vec> dv(n, Vec(v_dim));

  // BPTT through the forward sentence LSTM.
  Vec dh_carry(v_dim), dc_carry(v_dim);
  for (size_t i = n; i-- > 0;) {
    add_in_place(dh_carry, d_fwd[i]);
    LstmInputGrads g = lstm_step_backward(model.sent_fwd, cache.fwd_steps[i],
                                          dh_carry, dc_carry, grads.sent_fwd);
    if (!cache.mask_f.empty()) g.dx = hadamard(g.dx, cache.mask_f[i]);
    add_in_place(dv[i], g.dx);
    dh_carry = std::move(g.dh_prev);
    dc_carry = std::move(g.dc_prev);
  }

  // BPTT through the backward sentence LSTM; step k consumed position n-1-k.
  dh_carry = Vec(v_dim);
  dc_carry = Vec(v_dim);
  for (size_t k = n; k-- > 0;) {
    const size_t i = n - 1 - k;
    add_in_place(dh_carry, d_bwd[i]);
    LstmInputGrads g = lstm_step_backward(model.sent_bwd, cache.bwd_steps[k],
                                          dh_carry, dc_carry, grads.sent_bwd);
    if (!cache.mask_b.empty()) g.dx = hadamard(g.dx, cache.mask_b[k]);
    add_in_place(dv[i], g.dx);
    dh_carry = std::move(g.dh_prev);
    dc_carry = std::move(g.dc_prev);
  }

  // Split token gradients into lookup and character paths.
  for (size_t i = 0; i < n; ++i) {
    Vec d_char(d);
    if (model.uses_word_lookup()) {
      const size_t wd = model.word_dim();
      Vec d_word(wd);
      for (size_t j = 0; j < wd; ++j) d_word[j] = dv[i][j];
      for (size_t j = 0; j < d; ++j) d_char[j] = dv[i][wd + j];
      grads.word_emb.add_to_row(cache.word_rows[i], d_word);
    } else {
      d_char = dv[i];
    }
    if (!freeze_char) {
      encode_word_backward(model.char_enc, cache.char_caches[i], d_char,
                           grads.char_enc);
    }
  }
}

void TaggerTrainConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("TaggerTrainConfig: learning rate must be > 0");
  }
  if (dropout < 0.0 || dropout >= 1.0) {
    throw std::invalid_argument("TaggerTrainConfig: dropout must be in [0, 1)");
  }
  if (dim == 0) {
    throw std::invalid_argument("TaggerTrainConfig: dim must be >= 1");
  }
  if (unk_replace_prob < 0.0 || unk_replace_prob > 1.0) {
    throw std::invalid_argument(
        "TaggerTrainConfig: unk_replace_prob must be in [0, 1]");
  }
}

TaggerModel init_tagger(const TaggerTrainConfig& config,
                        const TaggedCorpus& train,
                        const EmbeddingTable* pretrained,
                        const CharEncoderParams* recon_params,
                        const CharVocab* recon_vocab) {
  config.validate();
  if (train.sentences.empty()) {
    throw std::invalid_argument("init_tagger: empty training corpus");
  }
  if (config.mode == TagMode::FullEmb && pretrained == nullptr) {
    throw std::invalid_argument("init_tagger: full+emb requires a pre-trained table");
  }
  if (config.mode == TagMode::CharD &&
      (recon_params == nullptr || recon_vocab == nullptr)) {
    throw std::invalid_argument(
        "init_tagger: chard requires a reconstruction checkpoint");
  }

  std::vector<std::string> tokens;
  for (const auto& sentence : train.sentences) {
    for (const auto& [token, tag] : sentence) tokens.push_back(token);
  }

  TaggerModel model;
  model.mode = config.mode;
  model.tags = train.tag_set;

  const CharVocab corpus_chars = CharVocab::build(tokens);
  size_t d = config.dim;
  if (config.mode == TagMode::CharD) {
    model.char_vocab = CharVocab::merge(*recon_vocab, corpus_chars);
    d = recon_params->dim();
  } else {
    model.char_vocab = corpus_chars;
  }

  Rng rng = Rng(config.seed).derive("tagger-init");

  size_t word_dim = config.word_dim == 0 ? d : config.word_dim;
  if (config.mode == TagMode::FullEmb) word_dim = pretrained->dim();

  // Word lookup first so Full and FullEmb consume the stream identically.
  if (config.mode == TagMode::Full || config.mode == TagMode::FullEmb) {
    model.word_vocab = WordVocab::build(train);
    model.word_emb = Mat(model.word_vocab.rows(), word_dim);
    const double limit = std::sqrt(3.0 / static_cast<double>(word_dim));
    for (size_t i = 0; i < model.word_emb.size(); ++i) {
      model.word_emb.data()[i] = rng.uniform(-limit, limit);
    }
    if (config.mode == TagMode::FullEmb) {
      for (size_t r = 0; r < model.word_vocab.words.size(); ++r) {
        if (const Vec* vec = pretrained->find(model.word_vocab.words[r])) {
          model.word_emb.set_row(r, *vec);
        }
      }
    }
  }

  model.char_enc = CharEncoderParams::init(model.char_vocab.rows(), d,
                                           config.use_highway, rng);
  if (config.mode == TagMode::CharD) {
    // Keep freshly drawn rows for characters new to the checkpoint, copy
    // everything else from the reconstruction.
    model.char_enc.use_highway = recon_params->use_highway;
    model.char_enc.w_hw = recon_params->w_hw;
    model.char_enc.b_hw = recon_params->b_hw;
    model.char_enc.fwd = recon_params->fwd;
    model.char_enc.bwd = recon_params->bwd;
    model.char_enc.w_fwd = recon_params->w_fwd;
    model.char_enc.w_bwd = recon_params->w_bwd;
    model.char_enc.bias = recon_params->bias;
    for (size_t i = 0; i < model.char_vocab.size(); ++i) {
      const unsigned char c = model.char_vocab.chars()[i];
      if (recon_vocab->contains(c)) {
        model.char_enc.char_emb.set_row(
            i, recon_params->char_emb.row_vec(recon_vocab->index_of(c)));
      }
    }
    model.char_enc.char_emb.set_row(
        model.char_vocab.unk_index(),
        recon_params->char_emb.row_vec(recon_vocab->unk_index()));
  }

  const size_t v_dim = model.input_dim();
  model.sent_fwd = LstmCellParams::init(v_dim, v_dim, rng);
  model.sent_bwd = LstmCellParams::init(v_dim, v_dim, rng);

  auto glorot = [&rng](size_t rows, size_t cols) {
    Mat m(rows, cols);
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (size_t i = 0; i < m.size(); ++i) {
      m.data()[i] = rng.uniform(-limit, limit);
    }
    return m;
  };
  model.w_proj = glorot(d, 2 * v_dim);
  model.b_proj = Vec(d);
  model.w1 = glorot(d, d);
  model.b1 = Vec(d);
  model.w2 = glorot(model.tags.size(), d);
  model.b2 = Vec(model.tags.size());
  return model;
}

namespace {

std::unordered_set<std::string> singleton_tokens(const TaggedCorpus& corpus) {
  std::unordered_map<std::string, size_t> counts;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& [token, tag] : sentence) ++counts[token];
  }
  std::unordered_set<std::string> singletons;
  for (const auto& [token, count] : counts) {
    if (count == 1) singletons.insert(token);
  }
  return singletons;
}

std::vector<int> gold_indices(const TaggedCorpus& corpus, size_t sentence) {
  std::vector<int> gold;
  for (const auto& [token, tag] : corpus.sentences[sentence]) {
    const int idx = corpus.tag_index(tag);
    if (idx < 0) {
      throw std::invalid_argument("train_tagger: tag '" + tag +
                                  "' missing from inventory");
    }
    gold.push_back(idx);
  }
  return gold;
}

}  // namespace

TaggerModel train_tagger(const TaggerTrainConfig& config,
                         const TaggedCorpus& train,
                         const EmbeddingTable* pretrained,
                         const CharEncoderParams* recon_params,
                         const CharVocab* recon_vocab,
                         std::vector<double>* nll_trace) {
  TaggerModel model =
      init_tagger(config, train, pretrained, recon_params, recon_vocab);
  if (nll_trace != nullptr) nll_trace->clear();
  if (config.epochs == 0) return model;

  TaggerGrads grads = TaggerGrads::zeros_like(model);
  const bool include_char = !config.freeze_char;
  AdamState adam(model.tensors(include_char));

  Rng master(config.seed);
  Rng train_rng = master.derive("tagger-train");
  const std::unordered_set<std::string> singletons =
      model.uses_word_lookup() ? singleton_tokens(train)
                               : std::unordered_set<std::string>{};

  TaggerForwardOptions options;
  options.training = true;
  options.rng = &train_rng;
  options.dropout = config.dropout;
  options.singletons = model.uses_word_lookup() ? &singletons : nullptr;
  options.unk_replace_prob = config.unk_replace_prob;

  std::vector<std::string> tokens;
  TaggerCache cache;
  for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::vector<size_t> order(train.sentences.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    master.derive("shuffle", epoch).shuffle(order);

    for (const size_t s : order) {
      tokens.clear();
      for (const auto& [token, tag] : train.sentences[s]) {
        tokens.push_back(token);
      }
      const std::vector<int> gold = gold_indices(train, s);
      tagger_forward(model, tokens, options, &cache);
      tagger_backward(model, cache, gold, grads, config.freeze_char);
      clip_global_norm(grads.tensors(include_char), kGradClipNorm);
      adam.step(model.tensors(include_char), grads.tensors(include_char),
                config.learning_rate);
      grads.zero();
    }
    if (nll_trace != nullptr) {
      nll_trace->push_back(corpus_mean_nll(model, train));
    }
  }
  return model;
}

std::vector<std::string> tag_sentence(const TaggerModel& model,
                                      const std::vector<std::string>& tokens) {
  const std::vector<Vec> probs = tagger_forward(model, tokens);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& p : probs) {
    size_t best = 0;
    for (size_t t = 1; t < p.size(); ++t) {
      if (p[t] > p[best]) best = t;
    }
    out.push_back(model.tags[best]);
  }
  return out;
}

double tag_accuracy(const TaggerModel& model, const TaggedCorpus& corpus) {
  size_t correct = 0, total = 0;
  std::vector<std::string> tokens;
  for (const auto& sentence : corpus.sentences) {
    tokens.clear();
    for (const auto& [token, tag] : sentence) tokens.push_back(token);
    const std::vector<std::string> predicted = tag_sentence(model, tokens);
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (predicted[i] == sentence[i].second) ++correct;
      ++total;
    }
  }
  return total == 0 ? 0.0
                    : static_cast<double>(correct) / static_cast<double>(total);
}

double corpus_mean_nll(const TaggerModel& model, const TaggedCorpus& corpus) {
  double nll = 0.0;
  size_t total = 0;
  std::vector<std::string> tokens;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    tokens.clear();
    for (const auto& [token, tag] : corpus.sentences[s]) {
      tokens.push_back(token);
    }
    std::vector<int> gold;
    for (const auto& [token, tag] : corpus.sentences[s]) {
      const int idx = corpus.tag_index(tag);
      if (idx < 0) {
        throw std::invalid_argument("corpus_mean_nll: tag '" + tag +
                                    "' missing from inventory");
      }
      gold.push_back(idx);
    }
    nll += tagger_nll(tagger_forward(model, tokens), gold);
    total += tokens.size();
  }
  return nll / static_cast<double>(total);
}

size_t count_lookup_params(const TaggerModel& model) {
  size_t rows = model.char_enc.vocab_rows();
  if (model.uses_word_lookup()) rows += model.word_emb.rows();
  return rows;
}

GridSearchResult grid_search(const TaggerTrainConfig& base,
                             const std::vector<double>& learning_rates,
                             const std::vector<double>& dropouts,
                             const TaggedCorpus& train,
                             const TaggedCorpus& dev,
                             const EmbeddingTable* pretrained,
                             const CharEncoderParams* recon_params,
                             const CharVocab* recon_vocab) {
  if (learning_rates.empty() || dropouts.empty()) {
    throw std::invalid_argument("grid_search: empty grid");
  }
  GridSearchResult result;
  bool first = true;
  for (const double lr : learning_rates) {
    for (const double drop : dropouts) {
      TaggerTrainConfig config = base;
      config.learning_rate = lr;
      config.dropout = drop;
      TaggerModel model =
          train_tagger(config, train, pretrained, recon_params, recon_vocab);
      GridCell cell{lr, drop, tag_accuracy(model, dev)};
      result.cells.push_back(cell);
      if (first || cell.dev_accuracy > result.best.dev_accuracy) {
        result.best = cell;
        result.best_model = std::move(model);
        first = false;
      }
    }
  }
  return result;
}

}  // namespace charec
