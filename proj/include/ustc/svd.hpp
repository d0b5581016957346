#pragma once

#include <vector>

#include "ustc/cmatrix.hpp"

namespace ustc {

// Singular values by one-sided Jacobi on the columns (Gram entries drive the
// rotations). Descending order, min(rows, cols) values. Iteration cap 100
// sweeps with relative off-diagonal tolerance 1e-13; hitting the cap throws
// NumericError.
std::vector<double> singular_values(const CMatrix& m);

// Nearest unitary in Frobenius norm (the unitary polar factor), by Newton
// iteration X <- (X + X^{-*})/2. Idempotent on unitary inputs. Throws
// ProjectionFailed on singular input.
CMatrix project_to_unitary(const CMatrix& m);

} // namespace ustc
