#include "nfa/tensor.hpp"

namespace nfa {

void matvec(const Mat& w, const Vec& x, Vec& y) {
  if (x.size() != w.cols) fail(Status::invalid_argument, "matvec: shape mismatch");
  y.assign(w.rows, 0.0);
  const double* p = w.data.data();
  for (std::size_t r = 0; r < w.rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < w.cols; ++c) acc += p[c] * x[c];
    y[r] = acc;
    p += w.cols;
  }
}

void matvec_t(const Mat& w, const Vec& x, Vec& y) {
  if (x.size() != w.rows) fail(Status::invalid_argument, "matvec_t: shape mismatch");
  y.assign(w.cols, 0.0);
  const double* p = w.data.data();
  for (std::size_t r = 0; r < w.rows; ++r) {
    const double xr = x[r];
    if (xr != 0.0) {
      for (std::size_t c = 0; c < w.cols; ++c) y[c] += p[c] * xr;
    }
    p += w.cols;
  }
}

void add_outer(Mat& acc, const Vec& g, const Vec& a) {
  if (g.size() != acc.rows || a.size() != acc.cols)
    fail(Status::invalid_argument, "add_outer: shape mismatch");
  double* p = acc.data.data();
  for (std::size_t r = 0; r < acc.rows; ++r) {
    const double gr = g[r];
    if (gr != 0.0) {
      for (std::size_t c = 0; c < acc.cols; ++c) p[c] += gr * a[c];
    }
    p += acc.cols;
  }
}

void axpy(double alpha, const Vec& x, Vec& y) {
  if (x.size() != y.size()) fail(Status::invalid_argument, "axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vec& x, double alpha) {
  for (double& v : x) v *= alpha;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) fail(Status::invalid_argument, "dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

}  // namespace nfa
