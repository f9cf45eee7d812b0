#include "nfa/encoder.hpp"

#include <algorithm>
#include <cmath>

namespace nfa {

Encoder Encoder::create(MlpSpec trunk_spec, std::uint32_t latent_dim) {
  if (latent_dim == 0) fail(Status::invalid_argument, "encoder: latent dim must be positive");
  Encoder enc;
  enc.trunk = Mlp::create(std::move(trunk_spec));
  enc.w_mu = Mat(latent_dim, enc.trunk.out_dim());
  enc.w_logvar = Mat(latent_dim, enc.trunk.out_dim());
  return enc;
}

void Encoder::init_glorot(Rng& rng, double gain) {
  trunk.init_glorot(rng, gain);
  for (Mat* head : {&w_mu, &w_logvar}) {
    const double limit = gain * std::sqrt(6.0 / static_cast<double>(head->rows + head->cols));
    for (double& x : head->data) x = (2.0 * rng.next_unit() - 1.0) * limit;
  }
  ++revision;
}

EncodeResult encode(const Encoder& enc, const SparseVec& x, double logvar_min,
                    double logvar_max) {
  if (x.dim != enc.input_dim()) fail(Status::invalid_argument, "encode: input dim mismatch");
  EncodeResult out;
  EncodeCache& cache = out.cache;
  const Vec& trunk_out = mlp_forward_sparse(enc.trunk, x, cache.trunk);
  // The trunk's final layer is linear inside Mlp; the encoder applies the
  // hidden activation to it so every trunk layer is a hidden layer.
  cache.hidden.resize(trunk_out.size());
  if (enc.trunk.spec.act == Act::tanh) {
    for (std::size_t i = 0; i < trunk_out.size(); ++i) cache.hidden[i] = std::tanh(trunk_out[i]);
  } else {
    for (std::size_t i = 0; i < trunk_out.size(); ++i)
      cache.hidden[i] = trunk_out[i] > 0.0 ? trunk_out[i] : 0.0;
  }
  matvec(enc.w_mu, cache.hidden, out.psi.mu);
  matvec(enc.w_logvar, cache.hidden, cache.logvar_raw);
  out.psi.logvar.resize(cache.logvar_raw.size());
  for (std::size_t k = 0; k < cache.logvar_raw.size(); ++k)
    out.psi.logvar[k] = std::clamp(cache.logvar_raw[k], logvar_min, logvar_max);
  cache.clamp_min = logvar_min;
  cache.clamp_max = logvar_max;
  cache.owner = &enc;
  cache.revision = enc.revision;
  return out;
}

Vec reparameterize(const DiagGaussian& psi, const Vec& eps) {
  if (eps.size() != psi.dim()) fail(Status::invalid_argument, "reparameterize: dim mismatch");
  Vec z(psi.dim());
  for (std::size_t k = 0; k < z.size(); ++k)
    z[k] = psi.mu[k] + std::exp(0.5 * psi.logvar[k]) * eps[k];
  return z;
}

double kl_to_prior(const DiagGaussian& psi) {
  double acc = 0.0;
  for (std::size_t k = 0; k < psi.dim(); ++k)
    acc += psi.mu[k] * psi.mu[k] + std::exp(psi.logvar[k]) - psi.logvar[k] - 1.0;
  return 0.5 * acc;
}

double kl_between(const DiagGaussian& a, const DiagGaussian& b) {
  if (a.dim() != b.dim()) fail(Status::invalid_argument, "kl_between: dim mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double diff = b.mu[k] - a.mu[k];
    acc += std::exp(a.logvar[k] - b.logvar[k]) + diff * diff * std::exp(-b.logvar[k]) - 1.0 +
           b.logvar[k] - a.logvar[k];
  }
  return 0.5 * acc;
}

EncoderGrads EncoderGrads::zeros_like(const Encoder& enc) {
  EncoderGrads g;
  g.trunk = MlpGrads::zeros_like(enc.trunk);
  g.w_mu = Mat(enc.w_mu.rows, enc.w_mu.cols);
  g.w_logvar = Mat(enc.w_logvar.rows, enc.w_logvar.cols);
  return g;
}

void EncoderGrads::zero() {
  trunk.zero();
  std::fill(w_mu.data.begin(), w_mu.data.end(), 0.0);
  std::fill(w_logvar.data.begin(), w_logvar.data.end(), 0.0);
}

void encoder_backward(const Encoder& enc, const EncodeCache& cache, const Vec& grad_mu,
                      const Vec& grad_logvar, EncoderGrads& acc) {
  if (cache.owner != &enc || cache.revision != enc.revision)
    fail(Status::invalid_argument, "encoder_backward: stale cache");
  if (grad_mu.size() != enc.latent_dim() || grad_logvar.size() != enc.latent_dim())
    fail(Status::invalid_argument, "encoder_backward: head gradient dim mismatch");

  // Zero gradient through coordinates where the log-variance clamp was active.
  Vec g_lv = grad_logvar;
  const Vec& raw = cache.logvar_raw;
  for (std::size_t k = 0; k < g_lv.size(); ++k) {
    if (raw[k] < cache.clamp_min || raw[k] > cache.clamp_max) g_lv[k] = 0.0;
  }

  add_outer(acc.w_mu, grad_mu, cache.hidden);
  add_outer(acc.w_logvar, g_lv, cache.hidden);

  Vec g_hidden_mu, g_hidden_lv;
  matvec_t(enc.w_mu, grad_mu, g_hidden_mu);
  matvec_t(enc.w_logvar, g_lv, g_hidden_lv);
  Vec g_trunk_out(g_hidden_mu.size());
  const Vec& pre = cache.trunk.pres.back();
  for (std::size_t i = 0; i < g_trunk_out.size(); ++i) {
    const double g_h = g_hidden_mu[i] + g_hidden_lv[i];
    const double slope = enc.trunk.spec.act == Act::tanh
                             ? 1.0 - cache.hidden[i] * cache.hidden[i]
                             : (pre[i] > 0.0 ? 1.0 : 0.0);
    g_trunk_out[i] = g_h * slope;
  }
  mlp_backward(enc.trunk, cache.trunk, g_trunk_out, &acc.trunk, nullptr);
}

}  // namespace nfa
