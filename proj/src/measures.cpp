#include "gatelab/measures.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numeric>

namespace gatelab {

namespace {

// tr[(A A^dag)^2] via the Hermitian Gram matrix: equals its squared
// Frobenius norm.
double gram_fourth_moment(const Mat& a) {
    Mat g;
    if (a.rows() <= a.cols())
        g.noalias() = a * a.adjoint();
    else
        g.noalias() = a.adjoint() * a;
    return g.squaredNorm();
}

}  // namespace

std::pair<double, double> invariant_traces(const BipartiteOperator& op) {
    const double x = gram_fourth_moment(reshuffle(op));
    const double y = gram_fourth_moment(partial_transpose(op).mat);
    return {x, y};
}

double linear_entanglement(const BipartiteOperator& op) {
    require_unitary(op);
    const double d = op.dims.total();
    return 1.0 - gram_fourth_moment(reshuffle(op)) / (d * d);
}

double linear_entanglement_swapped(const BipartiteOperator& op) {
    require_unitary(op);
    const double d = op.dims.total();
    return 1.0 - gram_fourth_moment(partial_transpose(op).mat) / (d * d);
}

std::pair<double, double> ep_gt_from_traces(Dims dims, double x, double y) {
    const double N = dims.small(), M = dims.large();
    const double ep = (N * M * (N * M + 1) - x - y) / (M * M * (N * N - 1));
    const double gt = (N * N * M * M - N * M - x + y) / (2 * N * M * (N + 1) * (M - 1));
    return {ep, gt};
}

double entangling_power(const BipartiteOperator& op) {
    require_unitary(op);
    auto [x, y] = invariant_traces(op);
    return ep_gt_from_traces(op.dims, x, y).first;
}

double gate_typicality(const BipartiteOperator& op) {
    require_unitary(op);
    auto [x, y] = invariant_traces(op);
    return ep_gt_from_traces(op.dims, x, y).second;
}

double haar_avg_ep(Dims dims) {
    dims.validate();
    const double N = dims.small(), M = dims.large();
    return N * (M * M - 1) / (M * (N * M + 1));
}

double haar_avg_gt(Dims dims) {
    dims.validate();
    const double N = dims.small(), M = dims.large();
    return (N - 1) * (M + 1) / (2 * (N * M - 1));
}

double ep_state_average_scale(Dims dims) {
    const double N = dims.small(), M = dims.large();
    return M * (N - 1) / (N * (M + 1));
}

std::pair<double, double> mc_entangling_power_oracle(const BipartiteOperator& op,
                                                     int samples, RngStream& rng) {
    require_unitary(op);
    if (samples < 100) throw std::invalid_argument("mc_entangling_power_oracle: samples must be >= 100");
    const int n = op.dims.n, m = op.dims.m;
    const double scale = ep_state_average_scale(op.dims);
    std::vector<double> vals(static_cast<std::size_t>(samples));
    Eigen::VectorXcd psi(n * m);
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXcd pa = haar_state(n, rng);
        const Eigen::VectorXcd pb = haar_state(m, rng);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < m; ++a) psi(i * m + a) = pa(i) * pb(a);
        const Eigen::VectorXcd out = op.mat * psi;
        // rows of the n x m coefficient matrix give rho_A = C C^dag
        Eigen::Map<const Mat> c(out.data(), m, n);
        Mat rho_a = c.transpose() * c.conjugate();
        vals[static_cast<std::size_t>(s)] = (1.0 - rho_a.squaredNorm()) / scale;
    }
    const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / samples;
    double ss = 0.0;
    for (double v : vals) ss += (v - mean) * (v - mean);
    const double stderr_ = samples > 1 ? std::sqrt(ss / (samples - 1.0) / samples) : 0.0;
    return {mean, stderr_};
}

bool is_dual_unitary(const BipartiteOperator& op, double tol) {
    require_unitary(op, tol);
    if (!op.dims.square())
        throw std::invalid_argument("is_dual_unitary: reshuffled matrix is square only for n = m");
    return is_unitary(reshuffle(op), tol);
}

bool is_two_unitary(const BipartiteOperator& op, double tol) {
    return is_dual_unitary(op, tol) && is_unitary(partial_transpose(op).mat, tol);
}

double scrambling_power(const BipartiteOperator& op) {
    const double ep = entangling_power(op);
    return ep * (2.0 - ep / haar_avg_ep(op.dims));
}

StationarityResult parabola_stationarity_check(int n, double t, double eps, int trials,
                                               RngStream& rng) {
    if (n < 2) throw std::invalid_argument("parabola_stationarity_check: n must be >= 2");
    const int d = n * n;
    const Mat s = swap_operator(n).mat;
    const double s_norm2 = s.squaredNorm();  // = n^2
    StationarityResult res;
    res.min_f = std::numeric_limits<double>::infinity();
    const int reps = eps == 0.0 ? 1 : trials;
    for (int k = 0; k < reps; ++k) {
        Mat h = Mat::Zero(d, d);
        if (eps != 0.0) {
            Mat z(d, d);
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i) z(i, j) = cx(rng.gaussian(), rng.gaussian());
            h = 0.5 * (z + z.adjoint());
            h -= (h.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
            h -= ((h * s).trace().real() / s_norm2) * s;
            h /= std::sqrt(h.squaredNorm());
        }
        const Mat gen = t * s + eps * h;
        Eigen::SelfAdjointEigenSolver<Mat> es(gen);
        if (es.info() != Eigen::Success) throw std::runtime_error("stationarity check: eigensolve failed");
        Mat u = es.eigenvectors() *
                (cx(0, 1) * es.eigenvalues().array().cast<cx>()).exp().matrix().asDiagonal() *
                es.eigenvectors().adjoint();
        BipartiteOperator op{{n, n}, std::move(u)};
        auto [x, y] = invariant_traces(op);
        auto [ep, gt] = ep_gt_from_traces(op.dims, x, y);
        const double f = ep - 2.0 * gt * (1.0 - gt);
        res.max_abs_f = std::max(res.max_abs_f, std::abs(f));
        res.min_f = std::min(res.min_f, f);
    }
    return res;
}

GateMeasures gate_measures(const BipartiteOperator& op, double tol) {
    require_unitary(op, tol);
    GateMeasures gm;
    auto [x, y] = invariant_traces(op);
    const double d = op.dims.total();
    gm.E = 1.0 - x / (d * d);
    gm.E_swapped = 1.0 - y / (d * d);
    std::tie(gm.ep, gm.gt) = ep_gt_from_traces(op.dims, x, y);
    if (op.dims.square()) {
        gm.is_dual = is_unitary(reshuffle(op), tol);
        gm.is_two_unitary = gm.is_dual && is_unitary(partial_transpose(op).mat, tol);
    }
    return gm;
}

}  // namespace gatelab
