#pragma once

#include <span>

#include "nfa/tensor.hpp"

namespace nfa {

// max-shifted log(sum(exp(v))); errors on empty input.
double log_sum_exp(std::span<const double> v);

// exp(v - log_sum_exp(v)); entries positive, sums to 1 within rounding.
Vec softmax_stable(std::span<const double> v);

// v - log_sum_exp(v), written into out.
void log_softmax(std::span<const double> v, Vec& out);

}  // namespace nfa
