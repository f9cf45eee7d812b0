#include "nfa/adam.hpp"

#include <cmath>

namespace nfa {

std::vector<TensorView> tensor_views(Mlp& m) {
  std::vector<TensorView> out;
  for (std::size_t l = 0; l < m.w.size(); ++l) {
    out.push_back({m.w[l].data.data(), m.w[l].data.size()});
    out.push_back({m.b[l].data(), m.b[l].size()});
  }
  return out;
}

std::vector<TensorView> tensor_views(MlpGrads& g) {
  std::vector<TensorView> out;
  for (std::size_t l = 0; l < g.w.size(); ++l) {
    out.push_back({g.w[l].data.data(), g.w[l].data.size()});
    out.push_back({g.b[l].data(), g.b[l].size()});
  }
  return out;
}

std::vector<TensorView> tensor_views(Encoder& e) {
  std::vector<TensorView> out = tensor_views(e.trunk);
  out.push_back({e.w_mu.data.data(), e.w_mu.data.size()});
  out.push_back({e.w_logvar.data.data(), e.w_logvar.data.size()});
  return out;
}

std::vector<TensorView> tensor_views(EncoderGrads& g) {
  std::vector<TensorView> out = tensor_views(g.trunk);
  out.push_back({g.w_mu.data.data(), g.w_mu.data.size()});
  out.push_back({g.w_logvar.data.data(), g.w_logvar.data.size()});
  return out;
}

std::vector<TensorView> tensor_views(DiagGaussian& psi) {
  return {{psi.mu.data(), psi.mu.size()}, {psi.logvar.data(), psi.logvar.size()}};
}

void Adam::init(const std::vector<TensorView>& params) {
  m.clear();
  v.clear();
  t = 0;
  for (const auto& p : params) {
    m.emplace_back(p.size, 0.0);
    v.emplace_back(p.size, 0.0);
  }
}

void Adam::step(const std::vector<TensorView>& params, const std::vector<TensorView>& grads,
                bool maximize) {
  if (m.empty() && t == 0) init(params);
  if (params.size() != grads.size() || params.size() != m.size())
    fail(Status::invalid_argument, "adam: tensor list mismatch");
  ++t;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  const double direction = maximize ? 1.0 : -1.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].size != grads[i].size || params[i].size != m[i].size())
      fail(Status::invalid_argument, "adam: tensor shape mismatch");
    double* p = params[i].data;
    const double* g = grads[i].data;
    double* mi = m[i].data();
    double* vi = v[i].data();
    for (std::size_t j = 0; j < params[i].size; ++j) {
      mi[j] = cfg.beta1 * mi[j] + (1.0 - cfg.beta1) * g[j];
      vi[j] = cfg.beta2 * vi[j] + (1.0 - cfg.beta2) * g[j] * g[j];
      const double m_hat = mi[j] / bc1;
      const double v_hat = vi[j] / bc2;
      p[j] += direction * cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
  }
}

}  // namespace nfa
