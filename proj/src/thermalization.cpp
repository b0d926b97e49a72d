#include "gatelab/thermalization.hpp"

#include "gatelab/matrix_io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace gatelab {

namespace {

bool spec_is_random(const GateSpec& spec) {
    switch (spec.family) {
        case GateFamily::Haar:
        case GateFamily::Diagonal: return true;
        case GateFamily::ControlledU: return spec.path.empty();
        default: return false;
    }
}

Mat local_unitary(int d, std::uint64_t seed) {
    RngStream rng(seed);
    return haar_unitary(d, rng);
}

// Per-block partial sums; blocks have a fixed size so the reduction order,
// and hence the output, does not depend on the thread count.
constexpr int kBlockTrials = 64;

struct StepSums {
    double ep = 0, ep2 = 0, gt = 0, gt2 = 0, x = 0, y = 0;
};

}  // namespace

double theory_ep(int n, double ep_u, Dims dims) {
    if (n < 1) throw std::invalid_argument("theory_ep: step must be >= 1");
    const double bar = haar_avg_ep(dims);
    return bar * (1.0 - std::pow(1.0 - ep_u / bar, n));
}

double theory_gt(int n, double gt_u, Dims dims) {
    if (n < 1) throw std::invalid_argument("theory_gt: step must be >= 1");
    const double bar = haar_avg_gt(dims);
    return bar * (1.0 - std::pow(1.0 - gt_u / bar, n));
}

double saturation_time(Dims dims, double eps) {
    dims.validate();
    if (eps <= 0.0) throw std::invalid_argument("saturation_time: eps must be positive");
    const double N = dims.small(), M = dims.large();
    return (N + 1) * (M * M - 1) / (M * (N * M + 1) * eps * eps);
}

std::pair<double, double> purity_pair(const BipartiteOperator& op) {
    auto [x, y] = invariant_traces(op);
    const double d = op.dims.total();
    return {x / (d * d), y / (d * d)};
}

Trajectory evolve_trajectory(const EvolutionConfig& cfg) {
    if (cfg.steps < 1 || cfg.trials < 1)
        throw std::invalid_argument("evolve_trajectory: steps and trials must be >= 1");
    // an explicit seed pins one realization for all trials; without a seed,
    // random families are redrawn per trial (ensemble averaging)
    const bool random_gate = spec_is_random(cfg.gate) && !cfg.gate.seed;
    BipartiteOperator fixed_gate;
    if (!random_gate) fixed_gate = build_gate(cfg.gate);
    const Dims dims = random_gate ? cfg.gate.dims : fixed_gate.dims;
    dims.validate();

    const int blocks = (cfg.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<std::vector<StepSums>> block_sums(
        static_cast<std::size_t>(blocks),
        std::vector<StepSums>(static_cast<std::size_t>(cfg.steps)));

    auto run_trial = [&](int trial, std::vector<StepSums>& sums) {
        BipartiteOperator u = fixed_gate;
        if (random_gate) {
            GateSpec gs = cfg.gate;
            gs.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 0, 2);
            u = build_gate(gs);
        }
        BipartiteOperator cur{dims, u.mat};
        Mat u_a, u_b;
        if (cfg.mode == LocalMode::FixedLocals) {
            u_a = local_unitary(dims.n, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 0, 0));
            u_b = local_unitary(dims.m, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 0, 1));
        }
        for (int s = 1; s <= cfg.steps; ++s) {
            if (s > 1) {
                if (cfg.mode == LocalMode::FreshLocals) {
                    u_a = local_unitary(dims.n, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial),
                                                            static_cast<std::uint64_t>(s), 0));
                    u_b = local_unitary(dims.m, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial),
                                                            static_cast<std::uint64_t>(s), 1));
                }
                if (cfg.mode != LocalMode::NoLocals) apply_local_product(u_a, u_b, cur.mat);
                cur.mat = u.mat * cur.mat;
            }
            auto [x, y] = invariant_traces(cur);
            auto [ep, gt] = ep_gt_from_traces(dims, x, y);
            const double d = dims.total();
            StepSums& ss = sums[static_cast<std::size_t>(s - 1)];
            ss.ep += ep;
            ss.ep2 += ep * ep;
            ss.gt += gt;
            ss.gt2 += gt * gt;
            ss.x += x / (d * d);
            ss.y += y / (d * d);
        }
    };

    std::atomic<int> next_block{0};
    auto worker = [&] {
        for (;;) {
            const int b = next_block.fetch_add(1);
            if (b >= blocks) return;
            const int lo = b * kBlockTrials;
            const int hi = std::min(cfg.trials, lo + kBlockTrials);
            for (int t = lo; t < hi; ++t) run_trial(t, block_sums[static_cast<std::size_t>(b)]);
        }
    };

    int threads = cfg.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, blocks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Trajectory traj(static_cast<std::size_t>(cfg.steps));
    const double nt = cfg.trials;
    for (int s = 0; s < cfg.steps; ++s) {
        StepSums tot;
        for (const auto& bs : block_sums) {
            const StepSums& ss = bs[static_cast<std::size_t>(s)];
            tot.ep += ss.ep;
            tot.ep2 += ss.ep2;
            tot.gt += ss.gt;
            tot.gt2 += ss.gt2;
            tot.x += ss.x;
            tot.y += ss.y;
        }
        TrajectoryRow& row = traj[static_cast<std::size_t>(s)];
        row.n = s + 1;
        row.mean_ep = tot.ep / nt;
        row.mean_gt = tot.gt / nt;
        row.X = tot.x / nt;
        row.Y = tot.y / nt;
        if (cfg.trials > 1) {
            const double var_ep = std::max(0.0, (tot.ep2 - nt * row.mean_ep * row.mean_ep) / (nt - 1));
            const double var_gt = std::max(0.0, (tot.gt2 - nt * row.mean_gt * row.mean_gt) / (nt - 1));
            row.stderr_ep = std::sqrt(var_ep / nt);
            row.stderr_gt = std::sqrt(var_gt / nt);
        }
    }
    const double ep1 = traj.front().mean_ep;
    const double gt1 = traj.front().mean_gt;
    for (auto& row : traj) {
        row.theory_ep = theory_ep(row.n, ep1, dims);
        row.theory_gt = theory_gt(row.n, gt1, dims);
    }
    return traj;
}

TwoGateAvg avg_ep_two_gate(const BipartiteOperator& u, const BipartiteOperator& v,
                           int trials, RngStream& rng) {
    require_unitary(u);
    require_unitary(v);
    if (!(u.dims == v.dims)) throw std::invalid_argument("avg_ep_two_gate: dims must match");
    if (trials < 1) throw std::invalid_argument("avg_ep_two_gate: trials must be >= 1");
    const double ep_u = entangling_power(u);
    const double ep_v = entangling_power(v);
    TwoGateAvg out;
    out.closed_form = ep_u + ep_v - ep_u * ep_v / haar_avg_ep(u.dims);
    double sum = 0, sum2 = 0;
    BipartiteOperator w{u.dims, Mat()};
    for (int t = 0; t < trials; ++t) {
        const Mat u_a = haar_unitary(u.dims.n, rng);
        const Mat u_b = haar_unitary(u.dims.m, rng);
        w.mat = v.mat;
        apply_local_product(u_a, u_b, w.mat);
        w.mat = u.mat * w.mat;
        auto [x, y] = invariant_traces(w);
        const double ep = ep_gt_from_traces(w.dims, x, y).first;
        sum += ep;
        sum2 += ep * ep;
    }
    out.mc_mean = sum / trials;
    if (trials > 1) {
        const double var = std::max(0.0, (sum2 - trials * out.mc_mean * out.mc_mean) / (trials - 1));
        out.stderr_ = std::sqrt(var / trials);
    }
    return out;
}

namespace {

// Structured left multiplication W <- U W for the families where the dense
// d x d product would dominate the runtime.
struct GateApplier {
    Dims dims;
    Mat full;                   // generic fallback
    Eigen::VectorXcd diagonal;  // diagonal family
    Mat ctrl_u;                 // controlled family: rows with control index
    int ctrl_rank = 0;          // >= rank get u_B applied on subsystem B

    enum class Kind { Full, Diagonal, Controlled } kind = Kind::Full;

    void apply(Mat& w) const {
        switch (kind) {
            case Kind::Full: w = full * w; break;
            case Kind::Diagonal: w = diagonal.asDiagonal() * w; break;
            case Kind::Controlled:
                for (int i = ctrl_rank; i < dims.n; ++i)
                    w.middleRows(static_cast<long>(i) * dims.m, dims.m) =
                        ctrl_u * w.middleRows(static_cast<long>(i) * dims.m, dims.m);
                break;
        }
    }
};

GateApplier make_applier(const GateSpec& spec, std::uint64_t master_seed) {
    GateSpec gs = spec;
    if (spec_is_random(gs) && !gs.seed) gs.seed = derive_seed(master_seed, 0, 0, 2);
    GateApplier ap;
    if (gs.family == GateFamily::Diagonal) {
        const BipartiteOperator op = build_gate(gs);
        ap.kind = GateApplier::Kind::Diagonal;
        ap.dims = op.dims;
        ap.diagonal = op.mat.diagonal();
    } else if (gs.family == GateFamily::ControlledU) {
        ap.kind = GateApplier::Kind::Controlled;
        ap.dims = gs.dims;
        ap.ctrl_rank = gs.rank == 0 ? gs.n / 2 : gs.rank;
        if (!gs.path.empty()) {
            ap.ctrl_u = load_square_matrix_json(gs.path);
        } else {
            RngStream rng(*gs.seed);
            ap.ctrl_u = haar_unitary(gs.n, rng);
        }
        if (!is_unitary(ap.ctrl_u)) throw std::invalid_argument("controlled gate: inner matrix not unitary");
    } else {
        const BipartiteOperator op = build_gate(gs);
        ap.kind = GateApplier::Kind::Full;
        ap.dims = op.dims;
        ap.full = op.mat;
    }
    return ap;
}

}  // namespace

void evolve_realization(const GateSpec& spec, const std::vector<int>& steps,
                        std::uint64_t seed, LocalMode mode,
                        const std::function<void(int, const BipartiteOperator&)>& visit) {
    if (steps.empty()) return;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (steps[i] >= steps[i + 1])
            throw std::invalid_argument("evolve_realization: steps must be strictly increasing");
    if (steps.front() < 0) throw std::invalid_argument("evolve_realization: steps must be >= 0");

    const GateApplier gate = make_applier(spec, seed);
    const Dims dims = gate.dims;
    Mat w = Mat::Identity(dims.total(), dims.total());
    gate.apply(w);

    std::size_t idx = 0;
    auto emit = [&](int label) {
        BipartiteOperator op{dims, std::move(w)};
        visit(label, op);
        w = std::move(op.mat);
        ++idx;
    };
    while (idx < steps.size() && steps[idx] <= 1) emit(steps[idx]);

    Mat u_a, u_b;
    if (mode == LocalMode::FixedLocals) {
        u_a = local_unitary(dims.n, derive_seed(seed, 0, 0, 0));
        u_b = local_unitary(dims.m, derive_seed(seed, 0, 0, 1));
    }
    for (int s = 2; idx < steps.size(); ++s) {
        if (mode == LocalMode::FreshLocals) {
            u_a = local_unitary(dims.n, derive_seed(seed, 0, static_cast<std::uint64_t>(s), 0));
            u_b = local_unitary(dims.m, derive_seed(seed, 0, static_cast<std::uint64_t>(s), 1));
        }
        if (mode != LocalMode::NoLocals) apply_local_product(u_a, u_b, w);
        gate.apply(w);
        if (steps[idx] == s) emit(s);
    }
}

}  // namespace gatelab
