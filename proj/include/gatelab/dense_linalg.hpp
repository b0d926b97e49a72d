#pragma once

#include "gatelab/types.hpp"

namespace gatelab {

/// Singular values of a general complex matrix, descending.
/// Throws std::runtime_error if the decomposition fails to converge.
std::vector<double> singular_values(const Mat& a);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const Mat& a);

/// Eigenvalues of a general square complex matrix (unordered).
std::vector<cx> complex_eigenvalues(const Mat& a);

}  // namespace gatelab
