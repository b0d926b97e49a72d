#pragma once

#include "gatelab/gate_zoo.hpp"
#include "gatelab/measures.hpp"

#include <functional>
#include <vector>

namespace gatelab {

enum class LocalMode {
    FreshLocals,  ///< independent (u_A, u_B) drawn every step
    FixedLocals,  ///< one (u_A, u_B) per trial, reused each step
    NoLocals,     ///< plain powers U^n
};

struct EvolutionConfig {
    GateSpec gate;
    int steps = 1;
    int trials = 1;
    std::uint64_t seed = 0;
    LocalMode mode = LocalMode::FreshLocals;
    int threads = 1;
};

/// One row per step n of the interlaced evolution W_n = U (uA (x) uB) W_{n-1}.
struct TrajectoryRow {
    int n = 0;
    double mean_ep = 0, stderr_ep = 0;
    double mean_gt = 0, stderr_gt = 0;
    double X = 0, Y = 0;  ///< trial means of tr(rho_R^2), tr(rho_T^2)
    double theory_ep = 0, theory_gt = 0;
};

using Trajectory = std::vector<TrajectoryRow>;

/// Monte-Carlo trajectory of the invariants. Gate families with internal
/// randomness draw a fresh realization per trial; the theory columns use the
/// trial-mean step-1 values as starting point. Output is independent of the
/// thread count.
Trajectory evolve_trajectory(const EvolutionConfig& cfg);

/// Closed-form saturation curves:
/// ep_bar [1 - (1 - ep_U/ep_bar)^n] and the analogue for g_t.
double theory_ep(int n, double ep_u, Dims dims);
double theory_gt(int n, double gt_u, Dims dims);

struct TwoGateAvg {
    double mc_mean = 0;
    double stderr_ = 0;
    double closed_form = 0;  ///< ep(U) + ep(V) - ep(U) ep(V) / ep_bar
};

/// Mean entangling power of U (uA (x) uB) V over Haar local draws, next to the
/// closed form it should reproduce.
TwoGateAvg avg_ep_two_gate(const BipartiteOperator& u, const BipartiteOperator& v,
                           int trials, RngStream& rng);

/// n* = (N+1)(M^2-1)/(M(NM+1) eps^2), the 1/eps^2 saturation-time scale of the
/// weakly interacting diagonal ensemble.
double saturation_time(Dims dims, double eps);

/// (tr rho_R^2, tr rho_T^2) of a single operator.
std::pair<double, double> purity_pair(const BipartiteOperator& op);

/// One realization of the evolution, visiting W_n at each requested step
/// (ascending, step 0 or 1 meaning the bare gate). Diagonal and controlled
/// gates are applied through their block structure so dimensions of a few
/// thousand stay tractable.
void evolve_realization(const GateSpec& spec, const std::vector<int>& steps,
                        std::uint64_t seed, LocalMode mode,
                        const std::function<void(int, const BipartiteOperator&)>& visit);

}  // namespace gatelab
