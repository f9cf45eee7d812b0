#pragma once

#include <functional>

#include "nfa/adam.hpp"
#include "nfa/encoder.hpp"
#include "nfa/generator.hpp"

namespace nfa {

enum class Mode : std::uint8_t { vae = 0, svi = 1, hybrid = 2 };
enum class Features : std::uint8_t { norm = 0, tfidf = 1 };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);
Features features_from_string(const std::string& s);
std::string to_string(Features f);

// Substream tags; every random draw in training and evaluation is keyed by
// (seed, tag, epoch, doc) so results are independent of processing order.
namespace stream {
constexpr std::uint64_t inner = 1;    // local psi refinement draws
constexpr std::uint64_t theta = 2;    // generator-update sample
constexpr std::uint64_t phi = 3;      // encoder-update sample
constexpr std::uint64_t shuffle = 4;  // minibatch order
constexpr std::uint64_t eval = 5;     // held-out bound evaluation
}  // namespace stream

struct ElboParts {
  double value = 0.0;
  double loglik = 0.0;
  double kl = 0.0;
};

// Single-sample bound: loglik(z(psi, eps)) - anneal_w * KL(psi || prior).
ElboParts elbo(const Mlp& gen, const DiagGaussian& psi, const SparseVec& x, const Vec& eps,
               double anneal_w);

// Reparameterized ascent gradient with respect to psi; KL term analytic.
ElboParts elbo_grad_psi(const Mlp& gen, const DiagGaussian& psi, const SparseVec& x,
                        const Vec& eps, double anneal_w, Vec& grad_mu, Vec& grad_logvar);

// Gradient with respect to the generator parameters (the KL term has none);
// accumulates into acc.
ElboParts elbo_grad_theta(const Mlp& gen, const DiagGaussian& psi, const SparseVec& x,
                          const Vec& eps, double anneal_w, MlpGrads& acc);

// Gradient with respect to the encoder parameters through psi(x function) and
// the reparameterized sample; accumulates into acc.
ElboParts elbo_grad_phi(const Mlp& gen, const Encoder& enc, const SparseVec& x,
                        const SparseVec& x_feat, const Vec& eps, double anneal_w,
                        double logvar_min, double logvar_max, EncoderGrads& acc);

struct PsiOptions {
  AdamConfig adam{1e-2, 0.9, 0.999, 1e-8};
  bool plain_sgd = false;
  // > 0 enables early exit when the relative change of the evaluation bound
  // between consecutive steps falls below the tolerance.
  double early_exit_tol = 0.0;
  double logvar_min = -8.0;
  double logvar_max = 8.0;
};

// obj(psi, eps, gmu, glv) returns the single-sample objective value; when the
// gradient pointers are null only the value is needed.
using PsiObjective =
    std::function<double(const DiagGaussian&, const Vec&, Vec*, Vec*)>;

struct PsiOptResult {
  DiagGaussian psi;
  // Objective at the returned iterate under the held-fixed evaluation eps;
  // NaN when steps == 0 (nothing was evaluated).
  double best_value = 0.0;
  // trace[0] is the starting point's value under the evaluation eps, then
  // one entry per step taken.
  std::vector<double> trace;
};

// Stochastic ascent on psi with fresh eps per step and best-iterate
// selection under one held-fixed evaluation eps (drawn first). steps == 0
// returns psi0 untouched without consuming randomness.
PsiOptResult optimize_psi(const PsiObjective& obj, DiagGaussian psi0, int steps, Rng& rng,
                          const PsiOptions& opt);

// The refinement loop of the hybrid and SVI algorithms: ascent on the
// single-sample bound for document x under the current generator.
PsiOptResult optimize_local_psi(const Mlp& gen, const SparseVec& x, DiagGaussian psi0, int steps,
                                Rng& rng, double anneal_w, const PsiOptions& opt);

// Linear 0 -> 1 ramp over `total` updates; total == 0 pins the weight at 1.
struct AnnealSchedule {
  std::uint64_t total = 0;
  std::uint64_t done = 0;

  double weight() const {
    if (total == 0) return 1.0;
    const double w = static_cast<double>(done) / static_cast<double>(total);
    return w < 1.0 ? w : 1.0;
  }
  void advance() { ++done; }
};

struct TrainOpts {
  Mode mode = Mode::hybrid;
  int m_steps = 50;
  std::size_t batch = 500;
  PsiOptions psi;
  int mc_samples = 1;
  int threads = 1;
  std::uint64_t seed = 0;
};

struct EpochStats {
  double mean_elbo = 0.0;
  double mean_kl = 0.0;
  std::uint64_t updates = 0;
  std::size_t docs = 0;
};

// One pass over the corpus in shuffled minibatches. Per batch: psi per
// document (encoded, prior-initialized, and/or refined according to the
// mode), then a generator update from the refined bound, then an encoder
// update at the new generator (skipped entirely for SVI). Empty documents
// are skipped. Gradients are averaged over the batch.
EpochStats train_epoch(Mlp& gen, Encoder& enc, const Corpus& data,
                       const std::vector<SparseVec>& feats, int epoch, const TrainOpts& opt,
                       Adam& adam_theta, Adam& adam_phi, AnnealSchedule& anneal);

// Throws numeric_error when any parameter is non-finite.
void check_finite_params(Mlp& gen, const std::string& where);
void check_finite_params(Encoder& enc, const std::string& where);

}  // namespace nfa
