#pragma once

#include <cstdint>

#include "nfa/encoder.hpp"
#include "nfa/mlp.hpp"

namespace nfa {

struct TensorView {
  double* data = nullptr;
  std::size_t size = 0;
};

// Flat views over a parameter group, in a fixed serialization order.
std::vector<TensorView> tensor_views(Mlp& m);
std::vector<TensorView> tensor_views(MlpGrads& g);
std::vector<TensorView> tensor_views(Encoder& e);
std::vector<TensorView> tensor_views(EncoderGrads& g);
std::vector<TensorView> tensor_views(DiagGaussian& psi);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam over a fixed list of tensors. `maximize` flips the
// step so callers pass ascent gradients directly.
struct Adam {
  AdamConfig cfg;
  std::vector<Vec> m;
  std::vector<Vec> v;
  std::int64_t t = 0;

  void init(const std::vector<TensorView>& params);
  bool initialized() const { return !m.empty() || t > 0; }
  void step(const std::vector<TensorView>& params, const std::vector<TensorView>& grads,
            bool maximize = true);
};

}  // namespace nfa
