#pragma once

#include "nfa/mlp.hpp"

namespace nfa {

// Per-example diagonal Gaussian variational parameters.
struct DiagGaussian {
  Vec mu;
  Vec logvar;

  std::size_t dim() const { return mu.size(); }
  static DiagGaussian prior(std::size_t k) { return {Vec(k, 0.0), Vec(k, 0.0)}; }
  bool operator==(const DiagGaussian&) const = default;
};

// MLP trunk over the feature vector plus linear heads for the mean and the
// diagonal log-variance.
struct Encoder {
  Mlp trunk;
  Mat w_mu;
  Mat w_logvar;
  std::uint64_t revision = 0;

  static Encoder create(MlpSpec trunk_spec, std::uint32_t latent_dim);
  void init_glorot(Rng& rng, double gain = 1.0);

  std::size_t input_dim() const { return trunk.in_dim(); }
  std::size_t latent_dim() const { return w_mu.rows; }
};

struct EncodeCache {
  const Encoder* owner = nullptr;
  std::uint64_t revision = 0;
  MlpCache trunk;
  Vec hidden;       // trunk output after the hidden activation
  Vec logvar_raw;   // head output before clamping
  double clamp_min = 0.0;
  double clamp_max = 0.0;
};

struct EncodeResult {
  DiagGaussian psi;
  EncodeCache cache;
};

// psi.mu = W_mu h(x), psi.logvar = clamp(W_logvar h(x)); the clamp bounds the
// variance during downstream optimization.
EncodeResult encode(const Encoder& enc, const SparseVec& x, double logvar_min, double logvar_max);

// z = mu + exp(logvar / 2) * eps.
Vec reparameterize(const DiagGaussian& psi, const Vec& eps);

// KL(N(mu, diag(exp(logvar))) || N(0, I)).
double kl_to_prior(const DiagGaussian& psi);

// KL(a || b) for diagonal Gaussians of equal dimension.
double kl_between(const DiagGaussian& a, const DiagGaussian& b);

struct EncoderGrads {
  MlpGrads trunk;
  Mat w_mu;
  Mat w_logvar;

  static EncoderGrads zeros_like(const Encoder& enc);
  void zero();
};

// Accumulates gradients of a scalar loss into acc, given its gradients at
// the two heads. Gradients through clamped log-variance entries are zero.
void encoder_backward(const Encoder& enc, const EncodeCache& cache, const Vec& grad_mu,
                      const Vec& grad_logvar, EncoderGrads& acc);

}  // namespace nfa
