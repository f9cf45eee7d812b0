#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "nfa/error.hpp"

namespace nfa {

using Vec = std::vector<double>;

// Row-major dense matrix.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

inline bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline bool all_finite(const Mat& m) { return all_finite(std::span<const double>(m.data)); }

// y = W x
void matvec(const Mat& w, const Vec& x, Vec& y);
// y = W^T x
void matvec_t(const Mat& w, const Vec& x, Vec& y);
// acc += g a^T
void add_outer(Mat& acc, const Vec& g, const Vec& a);

void axpy(double alpha, const Vec& x, Vec& y);  // y += alpha * x
void scale(Vec& x, double alpha);
double dot(const Vec& a, const Vec& b);
double squared_norm(std::span<const double> v);

}  // namespace nfa
