#include "gatelab/spectra.hpp"

#include "gatelab/dense_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gatelab {

double mp_pdf(double x) {
    if (x <= 0.0 || x > 4.0) return 0.0;
    return std::sqrt((4.0 - x) / x) / (2.0 * std::numbers::pi);
}

double mp_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 4.0) return 1.0;
    // antiderivative of the density on (0, 4)
    return (4.0 * std::asin(0.5 * std::sqrt(x)) + std::sqrt(x * (4.0 - x))) /
           (2.0 * std::numbers::pi);
}

double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf) {
    if (values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

double radial_ks(const std::vector<cx>& eigenvalues) {
    if (eigenvalues.empty()) throw std::invalid_argument("radial_ks: empty sample");
    std::vector<double> radii(eigenvalues.size());
    std::transform(eigenvalues.begin(), eigenvalues.end(), radii.begin(),
                   [](cx z) { return std::abs(z); });
    return ks_statistic(std::move(radii),
                        [](double r) { return std::min(r * r, 1.0); });
}

SpectralSample spectral_sample(const BipartiteOperator& op, SpectralKind which, int step) {
    op.validate();
    SpectralSample s;
    s.which = which;
    s.step = step;
    Mat target;
    if (which == SpectralKind::Reshuffled) {
        if (!op.dims.square())
            throw std::invalid_argument("spectral_sample: reshuffled matrix is square only for n = m");
        target = reshuffle(op);
    } else {
        target = partial_transpose(op).mat;
    }
    s.eigenvalues = complex_eigenvalues(target);
    // x_i = nm * eig(rho) = squared singular values of the permuted unitary
    const std::vector<double> sv = singular_values(target);
    s.scaled_sq_singular.resize(sv.size());
    std::transform(sv.begin(), sv.end(), s.scaled_sq_singular.begin(),
                   [](double v) { return v * v; });
    s.ks_mp = ks_statistic(s.scaled_sq_singular, mp_cdf);
    s.ks_radial = radial_ks(s.eigenvalues);
    return s;
}

std::pair<double, double> cue_form_factor(int N, int n, int trials, RngStream& rng) {
    if (N < 1 || n < 1) throw std::invalid_argument("cue_form_factor: N and n must be >= 1");
    if (trials < 100) throw std::invalid_argument("cue_form_factor: trials must be >= 100");
    double sum = 0, sum2 = 0;
    for (int t = 0; t < trials; ++t) {
        const Mat u = haar_unitary(N, rng);
        const std::vector<cx> lambda = complex_eigenvalues(u);
        cx tr = 0;
        for (cx z : lambda) tr += std::pow(z, n);
        const double v = std::norm(tr);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / trials;
    double stderr_ = 0;
    if (trials > 1) {
        const double var = std::max(0.0, (sum2 - trials * mean * mean) / (trials - 1));
        stderr_ = std::sqrt(var / trials);
    }
    return {mean, stderr_};
}

}  // namespace gatelab
