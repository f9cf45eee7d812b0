#pragma once

#include "nfa/tensor.hpp"

namespace nfa {

// Singular values of m in descending order, length min(rows, cols).
// Computed by cyclic Jacobi eigendecomposition of the smaller Gram matrix
// (M^T M or M M^T) followed by square roots of the clamped eigenvalues.
// Errors on non-finite entries.
Vec singular_values(const Mat& m);

}  // namespace nfa
