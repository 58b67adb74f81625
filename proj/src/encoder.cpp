#include "charec/encoder.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace charec {

CharEncoderParams CharEncoderParams::init(size_t vocab_rows, size_t dim,
                                          bool use_highway, Rng& rng) {
  if (dim == 0 || vocab_rows == 0) {
    throw std::invalid_argument("CharEncoderParams: zero dimension");
  }
  CharEncoderParams p;
  p.char_emb = Mat(vocab_rows, dim);
  const double limit = std::sqrt(3.0 / static_cast<double>(dim));
  for (size_t i = 0; i < p.char_emb.size(); ++i) {
    p.char_emb.data()[i] = rng.uniform(-limit, limit);
  }
  p.fwd = LstmCellParams::init(dim, dim, rng);
  p.bwd = LstmCellParams::init(dim, dim, rng);
  const double proj_limit = std::sqrt(6.0 / static_cast<double>(dim + dim));
  p.w_fwd = Mat(dim, dim);
  p.w_bwd = Mat(dim, dim);
  for (size_t i = 0; i < p.w_fwd.size(); ++i) {
    p.w_fwd.data()[i] = rng.uniform(-proj_limit, proj_limit);
  }
  for (size_t i = 0; i < p.w_bwd.size(); ++i) {
    p.w_bwd.data()[i] = rng.uniform(-proj_limit, proj_limit);
  }
  p.bias = Vec(dim);
  p.use_highway = use_highway;
  if (use_highway) {
    p.w_hw = Mat(dim, dim);
    for (size_t i = 0; i < p.w_hw.size(); ++i) {
      p.w_hw.data()[i] = rng.uniform(-proj_limit, proj_limit);
    }
    p.b_hw = Vec(dim);
  }
  return p;
}

CharEncoderParams CharEncoderParams::zeros(size_t vocab_rows, size_t dim,
                                           bool use_highway) {
  CharEncoderParams p;
  p.char_emb = Mat(vocab_rows, dim);
  p.fwd = LstmCellParams(dim, dim);
  p.bwd = LstmCellParams(dim, dim);
  p.w_fwd = Mat(dim, dim);
  p.w_bwd = Mat(dim, dim);
  p.bias = Vec(dim);
  p.use_highway = use_highway;
  if (use_highway) {
    p.w_hw = Mat(dim, dim);
    p.b_hw = Vec(dim);
  }
  return p;
}

std::vector<std::span<double>> CharEncoderParams::tensors() {
  std::vector<std::span<double>> out = {char_emb.span()};
  for (auto t : fwd.tensors()) out.push_back(t);
  for (auto t : bwd.tensors()) out.push_back(t);
  out.push_back(w_fwd.span());
  out.push_back(w_bwd.span());
  out.push_back(bias.span());
  if (use_highway) {
    out.push_back(w_hw.span());
    out.push_back(b_hw.span());
  }
  return out;
}

void CharEncoderParams::zero() {
  for (auto t : tensors()) {
    for (double& x : t) x = 0.0;
  }
}

void CharEncoderParams::validate() const {
  const size_t d = dim();
  if (d == 0) throw std::invalid_argument("CharEncoderParams: empty");
  if (char_emb.cols() != d || fwd.hidden_size() != d ||
      fwd.input_size() != d || bwd.hidden_size() != d ||
      bwd.input_size() != d || w_fwd.rows() != d || w_fwd.cols() != d ||
      w_bwd.rows() != d || w_bwd.cols() != d) {
    throw std::invalid_argument("CharEncoderParams: inconsistent shapes");
  }
  if (use_highway && (w_hw.rows() != d || w_hw.cols() != d ||
                      b_hw.size() != d)) {
    throw std::invalid_argument("CharEncoderParams: bad highway shapes");
  }
}

WordEncoding encode_word(const CharEncoderParams& params,
                         const std::string& word, const CharVocab& vocab,
                         bool training, Rng* rng, double dropout_rate,
                         EncodeCache* cache) {
  if (word.empty()) {
    throw std::invalid_argument("encode_word: empty word");
  }
  if (vocab.rows() != params.vocab_rows()) {
    throw std::invalid_argument("encode_word: vocab has " +
                                std::to_string(vocab.rows()) +
                                " rows, embedding table " +
                                std::to_string(params.vocab_rows()));
  }
  const bool use_dropout = training && dropout_rate > 0.0;
  if (use_dropout && rng == nullptr) {
    throw std::invalid_argument("encode_word: training dropout needs an rng");
  }

  const size_t d = params.dim();
  const size_t n = word.size();
  const std::vector<size_t> idx = vocab.encode(word);

  std::vector<Vec> emb(n);
  for (size_t j = 0; j < n; ++j) emb[j] = params.char_emb.row_vec(idx[j]);

  if (cache != nullptr) {
    cache->char_idx = idx;
    cache->mask_fwd.clear();
    cache->mask_bwd.clear();
    cache->fwd_steps.assign(n, LstmStepCache{});
    cache->bwd_steps.assign(n, LstmStepCache{});
  }

  // Forward LSTM, left to right; masks are drawn in consumption order.
  LstmState state(d);
  for (size_t j = 0; j < n; ++j) {
    Vec input = emb[j];
    if (use_dropout) {
      Vec mask = dropout_mask(d, dropout_rate, *rng);
      input = hadamard(input, mask);
      if (cache != nullptr) cache->mask_fwd.push_back(std::move(mask));
    }
    state = lstm_step(params.fwd, input, state,
                      cache != nullptr ? &cache->fwd_steps[j] : nullptr);
  }
  const Vec f_last = state.h;

  // Backward LSTM, right to left.
  state = LstmState(d);
  for (size_t k = 0; k < n; ++k) {
    const size_t j = n - 1 - k;
    Vec input = emb[j];
    if (use_dropout) {
      Vec mask = dropout_mask(d, dropout_rate, *rng);
      input = hadamard(input, mask);
      if (cache != nullptr) cache->mask_bwd.push_back(std::move(mask));
    }
    state = lstm_step(params.bwd, input, state,
                      cache != nullptr ? &cache->bwd_steps[k] : nullptr);
  }
  const Vec b_first = state.h;

  WordEncoding enc;
  enc.z = matvec(params.w_fwd, f_last);
  add_in_place(enc.z, matvec(params.w_bwd, b_first));
  add_in_place(enc.z, params.bias);
  enc.h = Vec(d);
  for (size_t i = 0; i < d; ++i) enc.h[i] = std::max(0.0, enc.z[i]);

  if (cache != nullptr) {
    cache->f_last = f_last;
    cache->b_first = b_first;
    cache->z = enc.z;
  }
  if (params.use_highway) {
    enc.h_hw = highway_combine(params.w_hw, params.b_hw, enc.h, enc.z,
                               cache != nullptr ? &cache->hw : nullptr);
  }
  return enc;
}

void encode_word_backward(const CharEncoderParams& params,
                          const EncodeCache& cache, const Vec& d_student,
                          CharEncoderParams& grads) {
  const size_t d = params.dim();
  const size_t n = cache.fwd_steps.size();

  Vec dh = d_student;
  Vec dz_extra(d);
  if (params.use_highway) {
    HighwayInputGrads hw =
        highway_backward(params.w_hw, cache.hw, d_student, grads.w_hw,
                         grads.b_hw);
    dh = std::move(hw.dh);
    dz_extra = std::move(hw.dz);
  }

  Vec dz(d);
  for (size_t i = 0; i < d; ++i) {
    dz[i] = dz_extra[i] + (cache.z[i] > 0.0 ? dh[i] : 0.0);
  }

  add_outer(grads.w_fwd, dz, cache.f_last);
  add_outer(grads.w_bwd, dz, cache.b_first);
  add_in_place(grads.bias, dz);

  std::vector<Vec> d_emb(n, Vec(d));

  // Back through the forward LSTM from the final step.
  Vec dh_carry = matvec_transpose(params.w_fwd, dz);
  Vec dc_carry(d);
  for (size_t j = n; j-- > 0;) {
    LstmInputGrads g = lstm_step_backward(params.fwd, cache.fwd_steps[j],
                                          dh_carry, dc_carry, grads.fwd);
    if (!cache.mask_fwd.empty()) {
      g.dx = hadamard(g.dx, cache.mask_fwd[j]);
    }
    add_in_place(d_emb[j], g.dx);
    dh_carry = std::move(g.dh_prev);
    dc_carry = std::move(g.dc_prev);
  }

  // Back through the backward LSTM; step k consumed position n-1-k.
  dh_carry = matvec_transpose(params.w_bwd, dz);
  dc_carry = Vec(d);
  for (size_t k = n; k-- > 0;) {
    LstmInputGrads g = lstm_step_backward(params.bwd, cache.bwd_steps[k],
                                          dh_carry, dc_carry, grads.bwd);
    if (!cache.mask_bwd.empty()) {
      g.dx = hadamard(g.dx, cache.mask_bwd[k]);
    }
    add_in_place(d_emb[n - 1 - k], g.dx);
    dh_carry = std::move(g.dh_prev);
    dc_carry = std::move(g.dc_prev);
  }

  for (size_t j = 0; j < n; ++j) {
    grads.char_emb.add_to_row(cache.char_idx[j], d_emb[j]);
  }
}

EmbeddingTable encode_vocab(const CharEncoderParams& params,
                            const std::vector<std::string>& words,
                            const CharVocab& vocab, unsigned threads) {
  std::vector<std::string> unique;
  unique.reserve(words.size());
  {
    std::unordered_map<std::string, bool> seen;
    for (const auto& w : words) {
      if (!seen.contains(w)) {
        seen.emplace(w, true);
        unique.push_back(w);
      }
    }
  }
  std::vector<Vec> vectors(unique.size());
  auto encode_range = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      vectors[i] = encode_word(params, unique[i], vocab).student();
    }
  };
  if (threads <= 1 || unique.size() < 2) {
    encode_range(0, unique.size());
  } else {
    const size_t workers = std::min<size_t>(threads, unique.size());
    std::vector<std::thread> pool;
    const size_t chunk = (unique.size() + workers - 1) / workers;
    for (size_t t = 0; t < workers; ++t) {
      const size_t begin = t * chunk;
      const size_t end = std::min(unique.size(), begin + chunk);
      if (begin < end) pool.emplace_back(encode_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  EmbeddingTable table;
  for (size_t i = 0; i < unique.size(); ++i) {
    table.insert(unique[i], std::move(vectors[i]));
  }
  return table;
}

void set_unk_row_to_mean(CharEncoderParams& params) {
  const size_t rows = params.vocab_rows();
  const size_t d = params.dim();
  if (rows < 2) return;
  Vec mean(d);
  for (size_t r = 0; r + 1 < rows; ++r) {
    for (size_t c = 0; c < d; ++c) mean[c] += params.char_emb(r, c);
  }
  for (size_t c = 0; c < d; ++c) mean[c] /= static_cast<double>(rows - 1);
  params.char_emb.set_row(rows - 1, mean);
}

}  // namespace charec
