#include "gatelab/bipartite.hpp"

#include "gatelab/dense_linalg.hpp"

#include <algorithm>

namespace gatelab {

Mat reshuffle(const BipartiteOperator& op) {
    op.validate();
    const int n = op.dims.n, m = op.dims.m;
    Mat r(n * n, m * m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    r(i * n + j, a * m + b) = op.mat(i * m + a, j * m + b);
    return r;
}

BipartiteOperator partial_transpose(const BipartiteOperator& op) {
    op.validate();
    const int n = op.dims.n, m = op.dims.m;
    BipartiteOperator out{op.dims, Mat(n * m, n * m)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    out.mat(j * m + a, i * m + b) = op.mat(i * m + a, j * m + b);
    return out;
}

BipartiteOperator swap_operator(int n) {
    if (n < 2) throw std::invalid_argument("swap_operator: n must be >= 2");
    BipartiteOperator s{{n, n}, Mat::Zero(n * n, n * n)};
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a)
            s.mat(a * n + i, i * n + a) = 1.0;
    return s;
}

std::vector<double> schmidt_spectrum(const BipartiteOperator& op) {
    const Mat r = reshuffle(op);
    std::vector<double> sv = singular_values(r);
    const int n = op.dims.n;
    std::vector<double> lam(static_cast<std::size_t>(n) * n, 0.0);
    for (std::size_t k = 0; k < sv.size() && k < lam.size(); ++k) {
        double v = sv[k] * sv[k];
        if (v < 0.0) v = 0.0;
        lam[k] = v;
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return lam;
}

Mat density_R(const BipartiteOperator& op) {
    const Mat r = reshuffle(op);
    return (r * r.adjoint()) / static_cast<double>(op.dims.total());
}

Mat density_T(const BipartiteOperator& op) {
    const Mat t = partial_transpose(op).mat;
    return (t * t.adjoint()) / static_cast<double>(op.dims.total());
}

Mat haar_unitary(int d, RngStream& rng) {
    if (d < 1) throw std::invalid_argument("haar_unitary: d must be >= 1");
    Mat z(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            z(i, j) = cx(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    const Mat r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        cx diag = r(j, j);
        double a = std::abs(diag);
        q.col(j) *= (a > 0.0) ? diag / a : cx(1.0, 0.0);
    }
    return q;
}

Eigen::VectorXcd haar_state(int d, RngStream& rng) {
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v(i) = cx(rng.gaussian(), rng.gaussian());
    v /= v.norm();
    return v;
}

void apply_local_product(const Mat& u_a, const Mat& u_b, Mat& w) {
    const int n = static_cast<int>(u_a.rows());
    const int m = static_cast<int>(u_b.rows());
    const int d = static_cast<int>(w.rows());
    if (n * m != d) throw std::invalid_argument("apply_local_product: dimension mismatch");
    // Column c viewed as an m x n matrix X (alpha fastest) transforms as uB * X * uA^T.
    Mat y(m, n);
    for (int c = 0; c < d; ++c) {
        Eigen::Map<const Mat> x(w.col(c).data(), m, n);
        y.noalias() = u_b * x * u_a.transpose();
        Eigen::Map<Mat>(w.col(c).data(), m, n) = y;
    }
}

}  // namespace gatelab
