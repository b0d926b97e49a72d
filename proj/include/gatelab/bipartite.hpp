#pragma once

#include "gatelab/rng.hpp"
#include "gatelab/types.hpp"

namespace gatelab {

/// Reshuffling (realignment): R[(i*n+j),(a*m+b)] = <i a|U|j b>.
/// Result is n^2 x m^2; applying reshuffle twice on square dims is the identity.
Mat reshuffle(const BipartiteOperator& op);

/// Partial transpose on subsystem A: <j a|U^TA|i b> = <i a|U|j b>. Involution.
BipartiteOperator partial_transpose(const BipartiteOperator& op);

/// SWAP operator S|i a> = |a i> on an n x n bipartite space.
BipartiteOperator swap_operator(int n);

/// Squared singular values of the reshuffled matrix, descending, padded with
/// zeros to length n^2. Tiny negatives (> -1e-12) are clipped to zero.
std::vector<double> schmidt_spectrum(const BipartiteOperator& op);

/// rho_R = U^R (U^R)^dag / (nm), order n^2.
Mat density_R(const BipartiteOperator& op);

/// rho_T = U^TA (U^TA)^dag / (nm), order nm.
Mat density_T(const BipartiteOperator& op);

/// Haar-random unitary of order d: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction. Deterministic given the stream state.
Mat haar_unitary(int d, RngStream& rng);

/// Haar-random pure state of dimension d (normalized complex Gaussian vector).
Eigen::VectorXcd haar_state(int d, RngStream& rng);

/// W = (uA (x) uB) * W, exploiting the tensor-product structure.
void apply_local_product(const Mat& u_a, const Mat& u_b, Mat& w);

}  // namespace gatelab
