#include "nfa/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace nfa {

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) fail(Status::invalid_argument, "log_sum_exp: empty vector");
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) fail(Status::numeric_error, "log_sum_exp: non-finite input");
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

Vec softmax_stable(std::span<const double> v) {
  const double lse = log_sum_exp(v);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::exp(v[i] - lse);
  return out;
}

void log_softmax(std::span<const double> v, Vec& out) {
  const double lse = log_sum_exp(v);
  out.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - lse;
}

}  // namespace nfa
