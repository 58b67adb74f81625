#include "charec/lstm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace charec {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

namespace {

void glorot_fill(Mat& m, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  for (size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-limit, limit);
}

Vec gate_preact(const Mat& wx, const Mat& wh, const Vec& b, const Vec& x,
                const Vec& h) {
  Vec a = matvec(wx, x);
  add_in_place(a, matvec(wh, h));
  add_in_place(a, b);
  return a;
}

}  // namespace

LstmCellParams::LstmCellParams(size_t hidden, size_t input)
    : w_xi(hidden, input), w_hi(hidden, hidden), b_i(hidden),
      w_xf(hidden, input), w_hf(hidden, hidden), b_f(hidden),
      w_xo(hidden, input), w_ho(hidden, hidden), b_o(hidden),
      w_xg(hidden, input), w_hg(hidden, hidden), b_g(hidden) {}

LstmCellParams LstmCellParams::init(size_t hidden, size_t input, Rng& rng) {
  LstmCellParams p(hidden, input);
  glorot_fill(p.w_xi, rng);
  glorot_fill(p.w_hi, rng);
  glorot_fill(p.w_xf, rng);
  glorot_fill(p.w_hf, rng);
  glorot_fill(p.w_xo, rng);
  glorot_fill(p.w_ho, rng);
  glorot_fill(p.w_xg, rng);
  glorot_fill(p.w_hg, rng);
  p.b_f.fill(1.0);
  return p;
}

std::vector<std::span<double>> LstmCellParams::tensors() {
  return {w_xi.span(), w_hi.span(), b_i.span(), w_xf.span(), w_hf.span(),
          b_f.span(),  w_xo.span(), w_ho.span(), b_o.span(), w_xg.span(),
          w_hg.span(), b_g.span()};
}

void LstmCellParams::zero() {
  for (auto t : tensors()) {
    for (double& x : t) x = 0.0;
  }
}

LstmState lstm_step(const LstmCellParams& params, const Vec& x,
                    const LstmState& prev, LstmStepCache* cache) {
  if (x.size() != params.input_size()) {
    throw std::invalid_argument("lstm_step: input size " +
                                std::to_string(x.size()) +
                                " does not match cell input size " +
                                std::to_string(params.input_size()));
  }
  if (prev.h.size() != params.hidden_size() ||
      prev.c.size() != params.hidden_size()) {
    throw std::invalid_argument("lstm_step: state size does not match cell");
  }

  Vec i = gate_preact(params.w_xi, params.w_hi, params.b_i, x, prev.h);
  Vec f = gate_preact(params.w_xf, params.w_hf, params.b_f, x, prev.h);
  Vec o = gate_preact(params.w_xo, params.w_ho, params.b_o, x, prev.h);
  Vec g = gate_preact(params.w_xg, params.w_hg, params.b_g, x, prev.h);

  const size_t n = params.hidden_size();
  LstmState next(n);
  Vec tanh_c(n);
  for (size_t k = 0; k < n; ++k) {
    i[k] = sigmoid(i[k]);
    f[k] = sigmoid(f[k]);
    o[k] = sigmoid(o[k]);
    g[k] = std::tanh(g[k]);
    next.c[k] = f[k] * prev.c[k] + i[k] * g[k];
    tanh_c[k] = std::tanh(next.c[k]);
    next.h[k] = o[k] * tanh_c[k];
  }
  if (!all_finite(next.h.span()) || !all_finite(next.c.span())) {
    throw std::runtime_error("lstm_step: non-finite state");
  }

  if (cache != nullptr) {
    cache->x = x;
    cache->h_prev = prev.h;
    cache->c_prev = prev.c;
    cache->i = std::move(i);
    cache->f = std::move(f);
    cache->o = std::move(o);
    cache->g = std::move(g);
    cache->c = next.c;
    cache->tanh_c = std::move(tanh_c);
  }
  return next;
}

LstmInputGrads lstm_step_backward(const LstmCellParams& params,
                                  const LstmStepCache& cache, const Vec& dh,
                                  const Vec& dc, LstmCellParams& grads) {
  const size_t n = params.hidden_size();
  Vec dc_total(n), da_i(n), da_f(n), da_o(n), da_g(n);
  for (size_t k = 0; k < n; ++k) {
    const double tc = cache.tanh_c[k];
    dc_total[k] = dc[k] + dh[k] * cache.o[k] * (1.0 - tc * tc);
    const double d_o = dh[k] * tc;
    const double d_i = dc_total[k] * cache.g[k];
    const double d_f = dc_total[k] * cache.c_prev[k];
    const double d_g = dc_total[k] * cache.i[k];
    da_i[k] = d_i * cache.i[k] * (1.0 - cache.i[k]);
    da_f[k] = d_f * cache.f[k] * (1.0 - cache.f[k]);
    da_o[k] = d_o * cache.o[k] * (1.0 - cache.o[k]);
    da_g[k] = d_g * (1.0 - cache.g[k] * cache.g[k]);
  }

  add_outer(grads.w_xi, da_i, cache.x);
  add_outer(grads.w_hi, da_i, cache.h_prev);
  add_in_place(grads.b_i, da_i);
  add_outer(grads.w_xf, da_f, cache.x);
  add_outer(grads.w_hf, da_f, cache.h_prev);
  add_in_place(grads.b_f, da_f);
  add_outer(grads.w_xo, da_o, cache.x);
  add_outer(grads.w_ho, da_o, cache.h_prev);
  add_in_place(grads.b_o, da_o);
  add_outer(grads.w_xg, da_g, cache.x);
  add_outer(grads.w_hg, da_g, cache.h_prev);
  add_in_place(grads.b_g, da_g);

  LstmInputGrads out;
  out.dx = matvec_transpose(params.w_xi, da_i);
  add_in_place(out.dx, matvec_transpose(params.w_xf, da_f));
  add_in_place(out.dx, matvec_transpose(params.w_xo, da_o));
  add_in_place(out.dx, matvec_transpose(params.w_xg, da_g));

  out.dh_prev = matvec_transpose(params.w_hi, da_i);
  add_in_place(out.dh_prev, matvec_transpose(params.w_hf, da_f));
  add_in_place(out.dh_prev, matvec_transpose(params.w_ho, da_o));
  add_in_place(out.dh_prev, matvec_transpose(params.w_hg, da_g));

  out.dc_prev = hadamard(dc_total, cache.f);
  return out;
}

}  // namespace charec
