#include "nfa/svd.hpp"

#include <algorithm>
#include <cmath>

namespace nfa {
namespace {

// Sum of squares of strictly off-diagonal entries of a symmetric matrix.
double off_diagonal_sq(const Mat& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = i + 1; j < g.cols; ++j) acc += 2.0 * g(i, j) * g(i, j);
  return acc;
}

// Cyclic Jacobi sweeps on symmetric g until the off-diagonal norm falls
// below 1e-12 (scaled by the Frobenius norm when that exceeds one).
void jacobi_eigenvalues(Mat& g) {
  const std::size_t n = g.rows;
  if (n < 2) return;
  const double fro = std::sqrt(squared_norm(std::span<const double>(g.data)));
  const double tol = 1e-12 * std::max(1.0, fro);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (std::sqrt(off_diagonal_sq(g)) < tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = g(p, q);
        if (apq == 0.0) continue;
        const double app = g(p, p);
        const double aqq = g(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double gkp = g(k, p);
          const double gkq = g(k, q);
          g(k, p) = c * gkp - s * gkq;
          g(k, q) = s * gkp + c * gkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double gpk = g(p, k);
          const double gqk = g(q, k);
          g(p, k) = c * gpk - s * gqk;
          g(q, k) = s * gpk + c * gqk;
        }
        g(p, q) = 0.0;
        g(q, p) = 0.0;
      }
    }
  }
}

}  // namespace

Vec singular_values(const Mat& m) {
  if (m.rows == 0 || m.cols == 0)
    fail(Status::invalid_argument, "singular_values: empty matrix");
  if (!all_finite(m)) fail(Status::numeric_error, "singular_values: non-finite entries");

  const bool use_mtm = m.cols <= m.rows;
  const std::size_t n = use_mtm ? m.cols : m.rows;
  Mat gram(n, n);
  if (use_mtm) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) acc += m(r, i) * m(r, j);
        gram(i, j) = acc;
        gram(j, i) = acc;
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t c = 0; c < m.cols; ++c) acc += m(i, c) * m(j, c);
        gram(i, j) = acc;
        gram(j, i) = acc;
      }
    }
  }

  jacobi_eigenvalues(gram);

  Vec values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = std::sqrt(std::max(0.0, gram(i, i)));
  std::sort(values.begin(), values.end(), std::greater<double>());
  return values;
}

}  // namespace nfa
