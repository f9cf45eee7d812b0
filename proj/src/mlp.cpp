#include "nfa/mlp.hpp"

#include <cmath>

namespace nfa {

Act act_from_string(const std::string& s) {
  if (s == "tanh") return Act::tanh;
  if (s == "relu") return Act::relu;
  fail(Status::invalid_argument, "unknown activation '" + s + "'");
}

std::string to_string(Act a) { return a == Act::tanh ? "tanh" : "relu"; }

Mlp Mlp::create(MlpSpec spec) {
  if (spec.dims.size() < 2) fail(Status::invalid_argument, "mlp: need at least one layer");
  for (std::uint32_t d : spec.dims)
    if (d == 0) fail(Status::invalid_argument, "mlp: zero-sized layer");
  Mlp m;
  m.spec = std::move(spec);
  for (std::size_t l = 0; l + 1 < m.spec.dims.size(); ++l) {
    m.w.emplace_back(m.spec.dims[l + 1], m.spec.dims[l]);
    m.b.emplace_back(m.spec.dims[l + 1], 0.0);
  }
  return m;
}

void Mlp::init_glorot(Rng& rng, double gain) {
  for (auto& mat : w) {
    const double limit =
        gain * std::sqrt(6.0 / static_cast<double>(mat.rows + mat.cols));
    for (double& x : mat.data) x = (2.0 * rng.next_unit() - 1.0) * limit;
  }
  for (auto& bias : b) std::fill(bias.begin(), bias.end(), 0.0);
  ++revision;
}

namespace {

inline void apply_act(Act act, const Vec& pre, Vec& out) {
  out.resize(pre.size());
  if (act == Act::tanh) {
    for (std::size_t i = 0; i < pre.size(); ++i) out[i] = std::tanh(pre[i]);
  } else {
    for (std::size_t i = 0; i < pre.size(); ++i) out[i] = pre[i] > 0.0 ? pre[i] : 0.0;
  }
}

// act'(pre) expressed from the stored pre/post activation pair.
inline double act_slope(Act act, double pre, double post) {
  if (act == Act::tanh) return 1.0 - post * post;
  return pre > 0.0 ? 1.0 : 0.0;
}

const Vec& run_forward(const Mlp& m, MlpCache& cache) {
  const std::size_t layers = m.layers();
  cache.pres.resize(layers);
  cache.acts.resize(layers + 1);
  for (std::size_t l = 0; l < layers; ++l) {
    Vec& pre = cache.pres[l];
    if (l == 0 && cache.sparse_input) {
      const SparseVec& x = cache.sparse_in;
      if (x.dim != m.w[0].cols) fail(Status::invalid_argument, "mlp: input dim mismatch");
      pre = m.b[0];
      for (std::size_t i = 0; i < x.nnz(); ++i) {
        const std::uint32_t c = x.idx[i];
        const double v = x.val[i];
        for (std::size_t r = 0; r < m.w[0].rows; ++r) pre[r] += m.w[0](r, c) * v;
      }
    } else {
      matvec(m.w[l], cache.acts[l], pre);
      axpy(1.0, m.b[l], pre);
    }
    if (l + 1 < layers) {
      apply_act(m.spec.act, pre, cache.acts[l + 1]);
    }
  }
  cache.owner = &m;
  cache.revision = m.revision;
  return cache.pres.back();
}

}  // namespace

const Vec& mlp_forward(const Mlp& m, const Vec& x, MlpCache& cache) {
  if (x.size() != m.in_dim()) fail(Status::invalid_argument, "mlp: input dim mismatch");
  cache.sparse_input = false;
  cache.sparse_in = {};
  cache.acts.assign(1, x);
  return run_forward(m, cache);
}

const Vec& mlp_forward_sparse(const Mlp& m, const SparseVec& x, MlpCache& cache) {
  cache.sparse_input = true;
  cache.sparse_in = x;
  cache.acts.assign(1, Vec{});
  return run_forward(m, cache);
}

MlpGrads MlpGrads::zeros_like(const Mlp& m) {
  MlpGrads g;
  for (const auto& mat : m.w) g.w.emplace_back(mat.rows, mat.cols);
  for (const auto& bias : m.b) g.b.emplace_back(bias.size(), 0.0);
  return g;
}

void MlpGrads::zero() {
  for (auto& mat : w) std::fill(mat.data.begin(), mat.data.end(), 0.0);
  for (auto& bias : b) std::fill(bias.begin(), bias.end(), 0.0);
}

void mlp_backward(const Mlp& m, const MlpCache& cache, const Vec& grad_out, MlpGrads* acc,
                  Vec* grad_in) {
  if (cache.owner != &m || cache.revision != m.revision)
    fail(Status::invalid_argument, "mlp_backward: stale forward cache");
  if (grad_out.size() != m.out_dim())
    fail(Status::invalid_argument, "mlp_backward: gradient dim mismatch");

  const std::size_t layers = m.layers();
  Vec g_pre = grad_out;  // gradient at the current layer's pre-activation
  Vec g_act;
  for (std::size_t l = layers; l-- > 0;) {
    if (acc) {
      if (l == 0 && cache.sparse_input) {
        const SparseVec& x = cache.sparse_in;
        Mat& gw = acc->w[0];
        for (std::size_t i = 0; i < x.nnz(); ++i) {
          const std::uint32_t c = x.idx[i];
          const double v = x.val[i];
          for (std::size_t r = 0; r < gw.rows; ++r) gw(r, c) += g_pre[r] * v;
        }
      } else {
        add_outer(acc->w[l], g_pre, cache.acts[l]);
      }
      axpy(1.0, g_pre, acc->b[l]);
    }
    if (l == 0) {
      if (grad_in) {
        if (cache.sparse_input)
          fail(Status::invalid_argument, "mlp_backward: no input gradient for sparse input");
        matvec_t(m.w[0], g_pre, *grad_in);
      }
      break;
    }
    matvec_t(m.w[l], g_pre, g_act);
    g_pre.resize(g_act.size());
    for (std::size_t i = 0; i < g_act.size(); ++i)
      g_pre[i] = g_act[i] * act_slope(m.spec.act, cache.pres[l - 1][i], cache.acts[l][i]);
  }
}

Vec mlp_jvp(const Mlp& m, const MlpCache& cache, const Vec& dx) {
  if (cache.owner != &m || cache.revision != m.revision)
    fail(Status::invalid_argument, "mlp_jvp: stale forward cache");
  if (cache.sparse_input) fail(Status::invalid_argument, "mlp_jvp: dense input required");
  if (dx.size() != m.in_dim()) fail(Status::invalid_argument, "mlp_jvp: tangent dim mismatch");

  const std::size_t layers = m.layers();
  Vec d_act = dx;
  Vec d_pre;
  for (std::size_t l = 0; l < layers; ++l) {
    matvec(m.w[l], d_act, d_pre);
    if (l + 1 < layers) {
      d_act.resize(d_pre.size());
      for (std::size_t i = 0; i < d_pre.size(); ++i)
        d_act[i] = d_pre[i] * act_slope(m.spec.act, cache.pres[l][i], cache.acts[l + 1][i]);
    }
  }
  return d_pre;
}

}  // namespace nfa
