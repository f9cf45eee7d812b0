#pragma once

#include <cstdint>
#include <vector>

#include "nfa/rng.hpp"
#include "nfa/sparse.hpp"
#include "nfa/tensor.hpp"

namespace nfa {

enum class Act : std::uint8_t { tanh = 0, relu = 1 };

Act act_from_string(const std::string& s);
std::string to_string(Act a);

// dims = [input, hidden..., output]; the activation applies to hidden layers,
// the output layer is linear. A two-entry dims list is a plain linear map.
struct MlpSpec {
  std::vector<std::uint32_t> dims;
  Act act = Act::tanh;

  std::size_t layers() const { return dims.empty() ? 0 : dims.size() - 1; }
  bool operator==(const MlpSpec&) const = default;
};

struct Mlp {
  MlpSpec spec;
  std::vector<Mat> w;  // per layer, out x in
  std::vector<Vec> b;
  // Bumped on every parameter update; caches record it to detect staleness.
  std::uint64_t revision = 0;

  static Mlp create(MlpSpec spec);
  void init_glorot(Rng& rng, double gain = 1.0);

  std::size_t in_dim() const { return spec.dims.front(); }
  std::size_t out_dim() const { return spec.dims.back(); }
  std::size_t layers() const { return spec.layers(); }
};

struct MlpCache {
  const Mlp* owner = nullptr;
  std::uint64_t revision = 0;
  // acts[l] = input to layer l (acts[0] unused for sparse input); the output
  // of the last layer is pres.back() (linear).
  std::vector<Vec> acts;
  std::vector<Vec> pres;
  bool sparse_input = false;
  SparseVec sparse_in;
};

// Returns the network output (pre-activation of the last layer).
const Vec& mlp_forward(const Mlp& m, const Vec& x, MlpCache& cache);
const Vec& mlp_forward_sparse(const Mlp& m, const SparseVec& x, MlpCache& cache);

struct MlpGrads {
  std::vector<Mat> w;
  std::vector<Vec> b;

  static MlpGrads zeros_like(const Mlp& m);
  void zero();
};

// Backpropagates grad_out (dL/d output). Accumulates parameter gradients
// into acc when non-null; writes dL/d input into grad_in when non-null.
// Errors when the cache does not match the current parameters.
void mlp_backward(const Mlp& m, const MlpCache& cache, const Vec& grad_out, MlpGrads* acc,
                  Vec* grad_in);

// Forward-mode directional derivative: d(output) for input tangent dx,
// linearized at the cached forward point.
Vec mlp_jvp(const Mlp& m, const MlpCache& cache, const Vec& dx);

}  // namespace nfa
