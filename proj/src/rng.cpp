#include "nfa/rng.hpp"

#include <cmath>

namespace nfa {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t splitmix_next(std::uint64_t& s) {
  s += kGolden;
  return splitmix_finalize(s);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t mix_word(std::uint64_t h, std::uint64_t w) {
  return splitmix_finalize(h ^ (w + kGolden + (h << 6) + (h >> 2)));
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state) word = splitmix_next(s);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = seed;
  h = mix_word(h, a);
  h = mix_word(h, b);
  h = mix_word(h, c);
  return Rng(h);
}

std::uint64_t Rng::next_u64() {
  auto& s = state;
  const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_unit_positive() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  const double u1 = next_unit_positive();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Rng::next_poisson(double lambda) {
  if (lambda <= 0.0) return 0;
  const double limit = std::exp(-lambda);
  std::uint64_t k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= next_unit_positive();
  } while (p > limit);
  return k - 1;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) fail(Status::invalid_argument, "next_below: n must be positive");
  return next_u64() % n;
}

Vec gaussian_vector(Rng& rng, std::size_t n) {
  if (n == 0) fail(Status::invalid_argument, "gaussian_vector: n must be positive");
  Vec out(n);
  for (double& x : out) x = rng.next_gaussian();
  return out;
}

}  // namespace nfa
