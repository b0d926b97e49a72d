#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace gatelab {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

/// Subsystem dimensions of a bipartite space H_A (x) H_B.
struct Dims {
    int n = 2;  ///< dim of subsystem A
    int m = 2;  ///< dim of subsystem B

    int total() const { return n * m; }
    bool square() const { return n == m; }

    /// Smaller and larger dimension; the scale factors of the rescaled
    /// invariants are stated for ordered dimensions.
    int small() const { return n < m ? n : m; }
    int large() const { return n < m ? m : n; }

    void validate() const {
        if (n < 2 || m < 2) throw std::invalid_argument("Dims: both subsystem dimensions must be >= 2");
    }
    bool operator==(const Dims&) const = default;
};

/// A square complex matrix of order n*m acting on the bipartite space,
/// with row-major composite index i*m + alpha for the basis state |i alpha>.
struct BipartiteOperator {
    Dims dims;
    Mat mat;

    void validate() const {
        dims.validate();
        if (mat.rows() != dims.total() || mat.cols() != dims.total())
            throw std::invalid_argument("BipartiteOperator: matrix order does not match dims");
    }
};

inline bool is_unitary(const Mat& u, double tol = 1e-10) {
    if (u.rows() != u.cols()) return false;
    Mat g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff() < tol;
}

inline void require_unitary(const BipartiteOperator& op, double tol = 1e-10) {
    op.validate();
    if (!is_unitary(op.mat, tol))
        throw std::invalid_argument("operator is not unitary within tolerance");
}

}  // namespace gatelab
