#pragma once

#include "gatelab/bipartite.hpp"
#include "gatelab/types.hpp"

#include <functional>
#include <vector>

namespace gatelab {

enum class SpectralKind { Reshuffled, PartialTranspose };

/// Eigenvalues and scaled squared singular values of one permuted operator,
/// with goodness-of-fit distances to the reference laws.
struct SpectralSample {
    SpectralKind which = SpectralKind::Reshuffled;
    int step = 0;
    std::vector<cx> eigenvalues;
    std::vector<double> scaled_sq_singular;  ///< x_i = nm * eig(rho), mean 1
    double ks_mp = 0;                        ///< KS vs the Marchenko-Pastur CDF
    double ks_radial = 0;                    ///< KS of |z| vs the circular-law CDF r^2
};

/// Deterministic spectral snapshot of op. The reshuffled kind needs n = m so
/// the permuted matrix is square.
SpectralSample spectral_sample(const BipartiteOperator& op, SpectralKind which, int step = 0);

/// Marchenko-Pastur density (2 pi)^-1 sqrt((4-x)/x) on (0, 4] and its CDF.
double mp_pdf(double x);
double mp_cdf(double x);

/// Two-sided Kolmogorov-Smirnov distance of a sample against a CDF.
double ks_statistic(std::vector<double> values, const std::function<double(double)>& cdf);

/// KS distance of eigenvalue moduli against the uniform-disk radial CDF
/// min(r^2, 1).
double radial_ks(const std::vector<cx>& eigenvalues);

/// MC mean and stderr of |tr u^n|^2 over Haar unitaries of order N;
/// the ensemble value is min(n, N).
std::pair<double, double> cue_form_factor(int N, int n, int trials, RngStream& rng);

}  // namespace gatelab
