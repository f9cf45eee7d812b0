#pragma once

#include <array>
#include <cstdint>

#include "nfa/tensor.hpp"

namespace nfa {

// Deterministic, platform-independent random source: xoshiro256** seeded
// through splitmix64. The integer stream for a given seed is identical on
// every platform. Floating-point derivations (unit doubles, gaussians) are
// deterministic given the same libm.
struct Rng {
  std::array<std::uint64_t, 4> state{};

  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed);

  // Substream keyed by (seed, a, b, c); used to make per-example randomness
  // independent of processing order.
  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0);

  std::uint64_t next_u64();
  // Uniform in [0, 1), 53-bit resolution.
  double next_unit();
  // Uniform in (0, 1]; never zero, safe to pass through log().
  double next_unit_positive();
  // Standard normal via Box-Muller (cosine branch; one draw per two uniforms).
  double next_gaussian();
  // Knuth's product method; adequate for the moderate rates used here.
  std::uint64_t next_poisson(double lambda);
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t next_below(std::uint64_t n);
};

// n iid standard normal draws; errors on n == 0.
Vec gaussian_vector(Rng& rng, std::size_t n);

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace nfa
