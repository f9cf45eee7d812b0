#include "nfa/generator.hpp"

#include <algorithm>
#include <cmath>

namespace nfa {

GenForward generator_forward(const Mlp& gen, const Vec& z) {
  GenForward out;
  out.logits = mlp_forward(gen, z, out.cache);
  log_softmax(out.logits, out.log_mu);
  return out;
}

double multinomial_log_likelihood(const Vec& log_mu, const SparseVec& x) {
  if (x.dim != log_mu.size())
    fail(Status::invalid_argument, "multinomial_log_likelihood: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.nnz(); ++i) acc += x.val[i] * log_mu[x.idx[i]];
  return acc;
}

Vec generator_backward(const Mlp& gen, const GenForward& fwd, const SparseVec& x, MlpGrads* acc) {
  if (x.dim != fwd.log_mu.size())
    fail(Status::invalid_argument, "generator_backward: dimension mismatch");
  // d loglik / d logits = x - N_d * mu.
  const double n_tokens = x.total();
  Vec g_logits(fwd.log_mu.size());
  for (std::size_t v = 0; v < g_logits.size(); ++v)
    g_logits[v] = -n_tokens * std::exp(fwd.log_mu[v]);
  for (std::size_t i = 0; i < x.nnz(); ++i) g_logits[x.idx[i]] += x.val[i];

  Vec grad_z;
  mlp_backward(gen, fwd.cache, g_logits, acc, &grad_z);
  return grad_z;
}

namespace {

Mat jacobian_impl(const Mlp& gen, const Vec& z, bool log_mu_target) {
  GenForward fwd = generator_forward(gen, z);
  const std::size_t vocab = gen.out_dim();
  const std::size_t latent = gen.in_dim();
  if (z.size() != latent) fail(Status::invalid_argument, "jacobian: latent dim mismatch");

  Mat jac(vocab, latent);
  Vec mu;
  if (log_mu_target) {
    mu.resize(vocab);
    for (std::size_t v = 0; v < vocab; ++v) mu[v] = std::exp(fwd.log_mu[v]);
  }
  Vec tangent(latent, 0.0);
  for (std::size_t k = 0; k < latent; ++k) {
    tangent[k] = 1.0;
    Vec col = mlp_jvp(gen, fwd.cache, tangent);
    tangent[k] = 0.0;
    if (log_mu_target) {
      // d log_mu = (I - 1 mu^T) d logits.
      double mu_dot = 0.0;
      for (std::size_t v = 0; v < vocab; ++v) mu_dot += mu[v] * col[v];
      for (std::size_t v = 0; v < vocab; ++v) jac(v, k) = col[v] - mu_dot;
    } else {
      for (std::size_t v = 0; v < vocab; ++v) jac(v, k) = col[v];
    }
  }
  return jac;
}

}  // namespace

Mat jacobian_log_mu(const Mlp& gen, const Vec& z) { return jacobian_impl(gen, z, true); }

Mat jacobian_logits(const Mlp& gen, const Vec& z) { return jacobian_impl(gen, z, false); }

SparseVec sample_counts(const Vec& log_mu, std::uint64_t n_tokens, Rng& rng) {
  const std::size_t vocab = log_mu.size();
  Vec cdf(vocab);
  double acc = 0.0;
  for (std::size_t v = 0; v < vocab; ++v) {
    acc += std::exp(log_mu[v]);
    cdf[v] = acc;
  }
  std::vector<double> counts(vocab, 0.0);
  for (std::uint64_t t = 0; t < n_tokens; ++t) {
    const double u = rng.next_unit() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t v = std::min(vocab - 1, static_cast<std::size_t>(it - cdf.begin()));
    counts[v] += 1.0;
  }
  SparseVec out;
  out.dim = static_cast<std::uint32_t>(vocab);
  for (std::size_t v = 0; v < vocab; ++v) {
    if (counts[v] > 0.0) {
      out.idx.push_back(static_cast<std::uint32_t>(v));
      out.val.push_back(counts[v]);
    }
  }
  return out;
}

SparseVec sample_document(const Mlp& gen, Rng& rng, std::uint64_t n_tokens) {
  const Vec z = gaussian_vector(rng, gen.in_dim());
  if (n_tokens == 0) {
    SparseVec out;
    out.dim = static_cast<std::uint32_t>(gen.out_dim());
    return out;
  }
  const GenForward fwd = generator_forward(gen, z);
  return sample_counts(fwd.log_mu, n_tokens, rng);
}

}  // namespace nfa
