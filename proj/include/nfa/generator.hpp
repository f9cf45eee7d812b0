#pragma once

#include "nfa/mlp.hpp"
#include "nfa/numeric.hpp"

namespace nfa {

// Forward pass of the generative MLP: logits over the vocabulary and their
// log-softmax (per-token log-probabilities).
struct GenForward {
  Vec logits;
  Vec log_mu;
  MlpCache cache;
};

GenForward generator_forward(const Mlp& gen, const Vec& z);

// sum_v x_v * log_mu_v over the nonzeros of x; the multinomial base measure
// is omitted. Zero for an empty document.
double multinomial_log_likelihood(const Vec& log_mu, const SparseVec& x);

// Gradient of multinomial_log_likelihood at the cached forward point.
// Accumulates parameter gradients into acc when non-null; returns d/dz.
Vec generator_backward(const Mlp& gen, const GenForward& fwd, const SparseVec& x, MlpGrads* acc);

// V x K matrix of d log_mu_v / d z_k.
Mat jacobian_log_mu(const Mlp& gen, const Vec& z);
// V x K matrix of d logits_v / d z_k (pre-softmax alternative).
Mat jacobian_logits(const Mlp& gen, const Vec& z);

// n_tokens categorical draws from exp(log_mu), aggregated into counts.
SparseVec sample_counts(const Vec& log_mu, std::uint64_t n_tokens, Rng& rng);

// Full generative draw: z ~ N(0, I), then n_tokens tokens from mu(z).
SparseVec sample_document(const Mlp& gen, Rng& rng, std::uint64_t n_tokens);

}  // namespace nfa
