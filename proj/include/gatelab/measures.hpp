#pragma once

#include "gatelab/bipartite.hpp"
#include "gatelab/types.hpp"

#include <utility>

namespace gatelab {

/// Bundle of local-unitary invariants for one gate. ep and gt use the
/// rescaled convention with maximum 1.
struct GateMeasures {
    double E = 0.0;          ///< linear operator entanglement E(U)
    double E_swapped = 0.0;  ///< partial-transpose twin; equals E(US) when n=m
    double ep = 0.0;         ///< entangling power
    double gt = 0.0;         ///< gate typicality
    bool is_dual = false;
    bool is_two_unitary = false;
};

/// tr[(U^R (U^R)^dag)^2] and tr[(U^TA (U^TA)^dag)^2]; the raw traces every
/// invariant here is built from.
std::pair<double, double> invariant_traces(const BipartiteOperator& op);

/// (ep, gt) from the raw traces, without re-deriving them.
std::pair<double, double> ep_gt_from_traces(Dims dims, double x, double y);

double linear_entanglement(const BipartiteOperator& op);
double linear_entanglement_swapped(const BipartiteOperator& op);
double entangling_power(const BipartiteOperator& op);
double gate_typicality(const BipartiteOperator& op);

/// Haar (CUE) averages over U(n*m): N(M^2-1)/(M(NM+1)) and (N-1)(M+1)/(2(NM-1))
/// with N <= M the ordered subsystem dimensions.
double haar_avg_ep(Dims dims);
double haar_avg_gt(Dims dims);

/// Unscaled maximum of the state-average entangling power, M(N-1)/(N(M+1)).
double ep_state_average_scale(Dims dims);

/// Monte-Carlo estimate of the rescaled state-average definition of e_p:
/// Haar product states, linear entropy of the reduced output state.
/// Returns (mean, stderr).
std::pair<double, double> mc_entangling_power_oracle(const BipartiteOperator& op,
                                                     int samples, RngStream& rng);

bool is_dual_unitary(const BipartiteOperator& op, double tol = 1e-10);
bool is_two_unitary(const BipartiteOperator& op, double tol = 1e-10);

/// e_p(V) * [2 - e_p(V)/ep_bar]: average e_p of V^dag (uA x uB) V over locals.
double scrambling_power(const BipartiteOperator& op);

/// Extrema over trials of f(exp(i(tS + eps H))) with f = e_p - 2 g_t (1 - g_t)
/// and H random Hermitian, traceless, Frobenius-normalized, orthogonal to S.
/// min_f tracks the sign: for n = 2 perturbations stay right of the parabola.
struct StationarityResult {
    double max_abs_f = 0.0;
    double min_f = 0.0;
};
StationarityResult parabola_stationarity_check(int n, double t, double eps, int trials,
                                               RngStream& rng);

/// Full measure bundle (invariants plus dual / 2-unitary flags).
GateMeasures gate_measures(const BipartiteOperator& op, double tol = 1e-10);

}  // namespace gatelab
