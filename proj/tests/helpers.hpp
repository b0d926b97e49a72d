#pragma once

#include "gatelab/types.hpp"

#include <Eigen/SVD>

namespace testutil {

using gatelab::Mat;
using gatelab::cx;

// Explicit Kronecker product, index (i*rb + a, j*cb + b).
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            for (long p = 0; p < b.rows(); ++p)
                for (long q = 0; q < b.cols(); ++q)
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return out;
}

// Independent reshuffle oracle written as four explicit loops.
inline Mat reshuffle_oracle(const gatelab::BipartiteOperator& op) {
    const int n = op.dims.n, m = op.dims.m;
    Mat out(n * n, m * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    out(i * n + j, a * m + b) = op.mat(i * m + a, j * m + b);
    return out;
}

// Independent partial-transpose oracle.
inline Mat partial_transpose_oracle(const gatelab::BipartiteOperator& op) {
    const int n = op.dims.n, m = op.dims.m;
    Mat out(n * m, n * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    out(j * m + a, i * m + b) = op.mat(i * m + a, j * m + b);
    return out;
}

// Operator Schmidt coefficients through Eigen's Jacobi SVD of the oracle
// reshuffle; independent of the library's LAPACK path.
inline std::vector<double> schmidt_oracle(const gatelab::BipartiteOperator& op) {
    const Mat r = reshuffle_oracle(op);
    Eigen::JacobiSVD<Mat> svd(r);
    std::vector<double> out;
    for (long i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()(i);
        out.push_back(s * s);
    }
    out.resize(static_cast<std::size_t>(op.dims.n) * op.dims.n, 0.0);
    return out;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
