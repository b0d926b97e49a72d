// gatelab: local-unitary invariants of bipartite gates, Monte-Carlo
// thermalization under interlaced random locals, and spectral diagnostics.

#include "gatelab/bipartite.hpp"
#include "gatelab/gate_zoo.hpp"
#include "gatelab/matrix_io.hpp"
#include "gatelab/measures.hpp"
#include "gatelab/spectra.hpp"
#include "gatelab/thermalization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

namespace gl = gatelab;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

gl::Dims parse_dims(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= text.size())
        throw gl::GateSpecError(0, "dims must look like NxM");
    try {
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw gl::GateSpecError(0, "dims must look like NxM with integer N, M");
    }
}

gl::LocalMode parse_mode(const std::string& text) {
    if (text == "fresh") return gl::LocalMode::FreshLocals;
    if (text == "fixed") return gl::LocalMode::FixedLocals;
    if (text == "none") return gl::LocalMode::NoLocals;
    throw std::invalid_argument("mode must be one of fresh, fixed, none");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

gl::GateSpec resolve_gate(const std::string& text, std::optional<std::uint64_t> cli_seed) {
    gl::GateSpec spec = gl::parse_gate_spec(text);
    if (!spec.seed && cli_seed) spec.seed = *cli_seed;
    return spec;
}

// ---- measure ----------------------------------------------------------------

int run_measure(const std::string& gate_text, std::optional<std::uint64_t> seed,
                const std::string& out_path, const std::string& format) {
    Timer timer;
    const gl::GateSpec spec = resolve_gate(gate_text, seed);
    const gl::BipartiteOperator op = gl::build_gate(spec);
    const gl::GateMeasures gm = gl::gate_measures(op);
    const std::vector<double> schmidt = gl::schmidt_spectrum(op);

    std::string body;
    if (format == "json") {
        json j{{"dims", {op.dims.n, op.dims.m}},
               {"E", gm.E},
               {"E_swapped", gm.E_swapped},
               {"ep", gm.ep},
               {"gt", gm.gt},
               {"schmidt", schmidt},
               {"is_dual", gm.is_dual},
               {"is_two_unitary", gm.is_two_unitary}};
        body = j.dump(1) + "\n";
    } else {
        body = "E,E_swapped,ep,gt,is_dual,is_two_unitary\n" + gl::format_double(gm.E) + "," +
               gl::format_double(gm.E_swapped) + "," + gl::format_double(gm.ep) + "," +
               gl::format_double(gm.gt) + "," + (gm.is_dual ? "1" : "0") + "," +
               (gm.is_two_unitary ? "1" : "0") + "\n";
    }
    std::cout << body;

    gl::RunManifest man;
    man.command = "measure";
    man.parameters = {{"gate", gl::render_gate_spec(spec)}, {"format", format}};
    if (seed) {
        man.seed = *seed;
        man.has_seed = true;
    }
    if (!out_path.empty()) {
        open_out(out_path) << body;
        man.outputs.push_back(out_path);
    }
    man.duration_seconds = timer.seconds();
    gl::write_manifest((out_path.empty() ? std::string("measure") : out_path) + ".manifest.json", man);
    return 0;
}

// ---- scatter ----------------------------------------------------------------

int run_scatter(const std::string& dims_text, int samples, std::uint64_t seed,
                const std::string& out_prefix) {
    Timer timer;
    const gl::Dims dims = parse_dims(dims_text);
    dims.validate();
    if (samples < 0) throw std::invalid_argument("samples must be >= 0");

    const std::string csv_path = out_prefix + ".csv";
    {
        auto out = open_out(csv_path);
        out << "ep,gt\n";
        gl::RngStream rng(seed);
        for (int s = 0; s < samples; ++s) {
            gl::BipartiteOperator op{dims, gl::haar_unitary(dims.total(), rng)};
            auto [x, y] = gl::invariant_traces(op);
            auto [ep, gt] = gl::ep_gt_from_traces(dims, x, y);
            out << gl::format_double(ep) << "," << gl::format_double(gt) << "\n";
        }
    }

    gl::RunManifest man;
    man.command = "scatter";
    man.parameters = {{"dims", dims_text}, {"samples", std::to_string(samples)}};
    man.seed = seed;
    man.has_seed = true;
    man.outputs.push_back(csv_path);

    if (dims.n == 2 && dims.m == 2) {
        const std::string bpath = out_prefix + "_boundary.csv";
        auto out = open_out(bpath);
        out << "curve,ep,gt\n";
        const int pts = 200;
        for (int i = 0; i <= pts; ++i) {
            const double gt = static_cast<double>(i) / pts;
            out << "parabola," << gl::format_double(2.0 * gt * (1.0 - gt)) << ","
                << gl::format_double(gt) << "\n";
        }
        for (int i = 0; i <= pts; ++i) {
            const double gt = static_cast<double>(i) / pts;
            out << "upper," << gl::format_double(2.0 - 2.0 * gt) << "," << gl::format_double(gt)
                << "\n";
            out << "lower," << gl::format_double(2.0 * gt) << "," << gl::format_double(gt) << "\n";
        }
        man.outputs.push_back(bpath);
    }
    man.duration_seconds = timer.seconds();
    gl::write_manifest(out_prefix + ".manifest.json", man);
    return 0;
}

// ---- thermalize -------------------------------------------------------------

int run_thermalize(const std::string& gate_text, const std::string& dims_text, int steps,
                   int trials, std::uint64_t seed, const std::string& mode_text, int threads,
                   const std::string& out_path) {
    Timer timer;
    gl::EvolutionConfig cfg;
    cfg.gate = gl::parse_gate_spec(gate_text);
    if (!dims_text.empty()) {
        cfg.gate.dims = parse_dims(dims_text);
        cfg.gate.n = cfg.gate.dims.n;
    }
    cfg.steps = steps;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.mode = parse_mode(mode_text);
    cfg.threads = threads;

    const gl::Trajectory traj = gl::evolve_trajectory(cfg);
    {
        auto out = open_out(out_path);
        out << "n,mean_ep,stderr_ep,mean_gt,stderr_gt,X,Y,theory_ep,theory_gt\n";
        for (const auto& r : traj) {
            out << r.n << "," << gl::format_double(r.mean_ep) << ","
                << gl::format_double(r.stderr_ep) << "," << gl::format_double(r.mean_gt) << ","
                << gl::format_double(r.stderr_gt) << "," << gl::format_double(r.X) << ","
                << gl::format_double(r.Y) << "," << gl::format_double(r.theory_ep) << ","
                << gl::format_double(r.theory_gt) << "\n";
        }
    }

    gl::RunManifest man;
    man.command = "thermalize";
    man.parameters = {{"gate", gate_text},
                      {"dims", dims_text},
                      {"steps", std::to_string(steps)},
                      {"trials", std::to_string(trials)},
                      {"mode", mode_text},
                      {"threads", std::to_string(threads)}};
    man.seed = seed;
    man.has_seed = true;
    man.outputs.push_back(out_path);
    man.duration_seconds = timer.seconds();
    gl::write_manifest(out_path + ".manifest.json", man);
    return 0;
}

// ---- spectra ----------------------------------------------------------------

int run_spectra(const std::string& gate_text, const std::string& dims_text,
                std::vector<int> steps, const std::string& which, std::uint64_t seed,
                const std::string& mode_text, const std::string& out_prefix) {
    Timer timer;
    gl::GateSpec spec = gl::parse_gate_spec(gate_text);
    if (!dims_text.empty()) {
        spec.dims = parse_dims(dims_text);
        spec.n = spec.dims.n;
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    if (steps.empty()) throw std::invalid_argument("at least one step is required");

    std::vector<gl::SpectralKind> kinds;
    if (which == "reshuffled" || which == "both") kinds.push_back(gl::SpectralKind::Reshuffled);
    if (which == "pt" || which == "both") kinds.push_back(gl::SpectralKind::PartialTranspose);
    if (kinds.empty()) throw std::invalid_argument("which must be one of reshuffled, pt, both");

    const std::string eig_path = out_prefix + "_eig.csv";
    const std::string x_path = out_prefix + "_x.csv";
    const std::string ks_path = out_prefix + "_ks.json";
    auto eig_out = open_out(eig_path);
    auto x_out = open_out(x_path);
    eig_out << "kind,step,re,im\n";
    x_out << "kind,step,x\n";
    json ks = json::array();

    gl::evolve_realization(spec, steps, seed, parse_mode(mode_text),
                           [&](int step, const gl::BipartiteOperator& op) {
        for (gl::SpectralKind kind : kinds) {
            const gl::SpectralSample s = gl::spectral_sample(op, kind, step);
            const char* tag = kind == gl::SpectralKind::Reshuffled ? "reshuffled" : "pt";
            for (gl::cx z : s.eigenvalues)
                eig_out << tag << "," << step << "," << gl::format_double(z.real()) << ","
                        << gl::format_double(z.imag()) << "\n";
            for (double x : s.scaled_sq_singular)
                x_out << tag << "," << step << "," << gl::format_double(x) << "\n";
            ks.push_back({{"kind", tag}, {"step", step}, {"ks_mp", s.ks_mp},
                          {"ks_radial", s.ks_radial}});
        }
    });

    open_out(ks_path) << ks.dump(1) << "\n";

    gl::RunManifest man;
    man.command = "spectra";
    std::string step_list;
    for (int s : steps) step_list += (step_list.empty() ? "" : ",") + std::to_string(s);
    man.parameters = {{"gate", gate_text}, {"dims", dims_text}, {"steps", step_list},
                      {"which", which},    {"mode", mode_text}};
    man.seed = seed;
    man.has_seed = true;
    man.outputs = {eig_path, x_path, ks_path};
    man.duration_seconds = timer.seconds();
    gl::write_manifest(out_prefix + ".manifest.json", man);
    return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyReport {
    json checks = json::array();
    bool all_pass = true;

    void check(const std::string& name, bool pass) {
        checks.push_back({{"name", name}, {"pass", pass}});
        all_pass = all_pass && pass;
        std::cout << (pass ? "pass" : "FAIL") << "  " << name << "\n";
    }
};

int run_verify(bool quick, std::uint64_t seed, const std::string& out_path) {
    Timer timer;
    VerifyReport rep;
    gl::RngStream rng(seed);

    {
        bool ok = true;
        for (gl::Dims dims : {gl::Dims{2, 2}, gl::Dims{2, 3}, gl::Dims{3, 3}}) {
            for (int k = 0; k < 10; ++k) {
                gl::BipartiteOperator op{dims, gl::haar_unitary(dims.total(), rng)};
                const gl::Mat r = gl::reshuffle(op);
                ok = ok && std::abs(r.squaredNorm() - op.mat.squaredNorm()) < 1e-8;
                ok = ok && (gl::partial_transpose(gl::partial_transpose(op)).mat - op.mat)
                                   .cwiseAbs().maxCoeff() == 0.0;
                if (dims.square()) {
                    gl::BipartiteOperator rr{dims, r};
                    ok = ok && (gl::reshuffle(rr) - op.mat).cwiseAbs().maxCoeff() == 0.0;
                }
                double sum = 0;
                for (double v : gl::schmidt_spectrum(op)) sum += v;
                ok = ok && std::abs(sum - dims.total()) < 1e-8 * dims.total();
            }
        }
        rep.check("index permutations: involutions, norm and trace preservation", ok);
    }
    {
        const auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
        const gl::GateMeasures c = gl::gate_measures(gl::cnot_gate());
        const gl::GateMeasures d = gl::gate_measures(gl::dcnot_gate());
        const gl::GateMeasures f = gl::gate_measures(gl::fourier_gate(2));
        const gl::GateMeasures sq = gl::gate_measures(gl::fractional_swap(std::numbers::pi / 4, 2));
        const gl::GateMeasures sw = gl::gate_measures(gl::swap_operator(2));
        rep.check("two-qubit landmark gates hit their exact invariants",
                  close(c.E, 0.5) && close(c.E_swapped, 0.75) && close(c.ep, 2.0 / 3) &&
                      close(c.gt, 1.0 / 3) && close(d.E, 0.75) && close(d.E_swapped, 0.5) &&
                      close(d.ep, 2.0 / 3) &&
                      close(d.gt, 2.0 / 3) && close(f.E, 0.75) && close(f.gt, 5.0 / 6) &&
                      close(sq.E, 9.0 / 16) && close(sq.ep, 0.5) && close(sw.ep, 0.0) &&
                      close(sw.gt, 1.0));
    }
    {
        bool ok = true;
        for (int k = 0; k < 20; ++k) {
            gl::CartanCoords cc{rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0, 2)};
            const auto [ep, gt] = gl::cartan_ep_gt(cc);
            const gl::GateMeasures gm = gl::gate_measures(gl::cartan_gate(cc));
            ok = ok && std::abs(ep - gm.ep) < 1e-10 && std::abs(gt - gm.gt) < 1e-10;
            const gl::LocalInvariants li = gl::local_invariants_G(cc);
            ok = ok && std::abs(li.E - gm.E) < 1e-10 && std::abs(li.E_swapped - gm.E_swapped) < 1e-10;
        }
        for (int k = 0; k < 20; ++k) {
            const double t = rng.uniform(0, 3.2);
            const gl::GateMeasures gm = gl::gate_measures(gl::fractional_swap(t, 2));
            const double st = std::sin(t), s2t = std::sin(2 * t);
            ok = ok && std::abs(gm.ep - 0.5 * s2t * s2t) < 1e-10 &&
                 std::abs(gm.gt - st * st) < 1e-10;
            const double a = rng.uniform(0, 1);
            const gl::GateMeasures ga = gl::gate_measures(gl::cs_alpha(a));
            ok = ok && std::abs(ga.ep - 2.0 / 3) < 1e-10 &&
                 std::abs(ga.gt - (0.5 - std::cos(std::numbers::pi * a) / 6)) < 1e-10 &&
                 std::abs(ga.E - (5 - std::cos(std::numbers::pi * a)) / 8) < 1e-10;
        }
        rep.check("closed forms match numerics on the parameterized families", ok);
    }
    {
        const gl::GateMeasures p = gl::gate_measures(gl::perm_p9());
        rep.check("qutrit permutation gate is 2-unitary with maximal entangling power",
                  p.is_two_unitary && std::abs(p.ep - 1) < 1e-10 && std::abs(p.gt - 0.5) < 1e-10);
    }
    {
        bool ok = true;
        for (gl::Dims dims : {gl::Dims{2, 2}, gl::Dims{2, 3}}) {
            for (int k = 0; k < 10; ++k) {
                gl::BipartiteOperator op{dims, gl::haar_unitary(dims.total(), rng)};
                gl::BipartiteOperator conj = op;
                gl::apply_local_product(gl::haar_unitary(dims.n, rng),
                                        gl::haar_unitary(dims.m, rng), conj.mat);
                gl::Mat right = gl::Mat::Identity(dims.total(), dims.total());
                gl::apply_local_product(gl::haar_unitary(dims.n, rng),
                                        gl::haar_unitary(dims.m, rng), right);
                conj.mat = conj.mat * right;
                ok = ok && std::abs(gl::entangling_power(conj) - gl::entangling_power(op)) < 1e-10;
                ok = ok && std::abs(gl::gate_typicality(conj) - gl::gate_typicality(op)) < 1e-10;
                gl::BipartiteOperator dag{dims, op.mat.adjoint()};
                ok = ok && std::abs(gl::entangling_power(dag) - gl::entangling_power(op)) < 1e-10;
            }
        }
        for (int n : {2, 3}) {
            for (int k = 0; k < 10; ++k) {
                gl::BipartiteOperator op{{n, n}, gl::haar_unitary(n * n, rng)};
                gl::BipartiteOperator us{{n, n}, op.mat * gl::swap_operator(n).mat};
                ok = ok && std::abs(gl::gate_typicality(op) + gl::gate_typicality(us) - 1) < 1e-10;
            }
        }
        rep.check("local invariance, adjoint symmetry, typicality complementarity", ok);
    }
    {
        bool ok = true;
        const std::vector<std::string> specs = {
            "cnot", "fswap:t=0.25,n=3", "diag:eps=0.5,dims=2x3,seed=7",
            "ctrlu:n=4,rank=2,seed=9", "cartan:c1=1,c2=0.5,c3=0.25", "fourier:n=3"};
        for (const auto& s : specs) {
            const gl::GateSpec a = gl::parse_gate_spec(s);
            const gl::GateSpec b = gl::parse_gate_spec(gl::render_gate_spec(a));
            ok = ok && gl::render_gate_spec(a) == gl::render_gate_spec(b);
        }
        rep.check("gate-spec parse and render round-trip", ok);
    }
    {
        // quadrature of the density against the closed-form CDF; the
        // substitution x = 4 sin^2(theta) removes the edge singularity
        bool ok = true;
        const int steps = 200000;
        double acc = 0;
        const double h = 0.5 * std::numbers::pi / steps;
        auto g = [](double th) { return (4.0 / std::numbers::pi) * std::cos(th) * std::cos(th); };
        double prev = g(0);
        for (int i = 1; i <= steps; ++i) {
            const double th = i * h;
            const double f = g(th);
            acc += 0.5 * (prev + f) * h;
            prev = f;
            if (i % (steps / 8) == 0) {
                const double x = 4 * std::sin(th) * std::sin(th);
                ok = ok && std::abs(acc - gl::mp_cdf(x)) < 1e-8;
            }
        }
        ok = ok && std::abs(acc - 1.0) < 1e-8;
        ok = ok && std::abs(gl::mp_pdf(1.0) - std::sqrt(3.0) / (2 * std::numbers::pi)) < 1e-12;
        rep.check("spectral reference law normalization and closed-form CDF", ok);
    }

    if (!quick) {
        {
            gl::RngStream r2(gl::derive_seed(seed, 1));
            double sum_ep = 0, sum_gt = 0;
            const int n_samples = 10000;
            for (int k = 0; k < n_samples; ++k) {
                gl::BipartiteOperator op{{2, 2}, gl::haar_unitary(4, r2)};
                auto [x, y] = gl::invariant_traces(op);
                auto [ep, gt] = gl::ep_gt_from_traces(op.dims, x, y);
                sum_ep += ep;
                sum_gt += gt;
            }
            rep.check("Haar ensemble means at (2,2)",
                      std::abs(sum_ep / n_samples - 0.6) < 0.01 &&
                          std::abs(sum_gt / n_samples - 0.5) < 0.01);
        }
        {
            gl::RngStream r2(gl::derive_seed(seed, 2));
            bool ok = true;
            for (int k = 0; k < 3; ++k) {
                gl::BipartiteOperator op{{2, 3}, gl::haar_unitary(6, r2)};
                auto [mean, se] = gl::mc_entangling_power_oracle(op, 20000, r2);
                ok = ok && std::abs(mean - gl::entangling_power(op)) < 3 * se + 1e-9;
            }
            rep.check("state-average oracle agrees with the operator formula", ok);
        }
        {
            gl::RngStream r2(gl::derive_seed(seed, 3));
            gl::BipartiteOperator u{{2, 3}, gl::haar_unitary(6, r2)};
            gl::BipartiteOperator v{{2, 3}, gl::haar_unitary(6, r2)};
            const gl::TwoGateAvg avg = gl::avg_ep_two_gate(u, v, 5000, r2);
            rep.check("two-gate composition law within MC error",
                      std::abs(avg.mc_mean - avg.closed_form) < 3 * avg.stderr_ + 1e-9);
        }
        {
            gl::RngStream r2(gl::derive_seed(seed, 4));
            auto [m1, s1] = gl::cue_form_factor(8, 3, 2000, r2);
            auto [m2, s2] = gl::cue_form_factor(8, 20, 2000, r2);
            rep.check("CUE form factor saturates at min(n, N)",
                      std::abs(m1 - 3) < 3 * s1 + 0.05 && std::abs(m2 - 8) < 3 * s2 + 0.05);
        }
    }

    json report{{"checks", rep.checks}, {"all_pass", rep.all_pass}, {"quick", quick}};
    std::cout << report.dump(1) << "\n";

    gl::RunManifest man;
    man.command = "verify";
    man.parameters = {{"quick", quick ? "true" : "false"}};
    man.seed = seed;
    man.has_seed = true;
    if (!out_path.empty()) {
        open_out(out_path) << report.dump(1) << "\n";
        man.outputs.push_back(out_path);
    }
    man.duration_seconds = timer.seconds();
    gl::write_manifest((out_path.empty() ? std::string("verify") : out_path) + ".manifest.json",
                       man);
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-unitary invariants of bipartite gates and their thermalization"};
    app.require_subcommand(1);

    std::string gate_text, dims_text, out_path, format = "json", which = "both", mode = "fresh";
    std::optional<std::uint64_t> seed_opt;
    std::uint64_t seed = 0;
    int samples = 1000, steps = 1, trials = 1, threads = 0;
    std::vector<int> step_list;
    bool quick = false;

    auto* measure = app.add_subcommand("measure", "invariants of a single gate");
    measure->add_option("gate", gate_text, "gate spec, e.g. cnot or fswap:t=0.5,n=3")->required();
    measure->add_option("--seed", seed_opt, "seed for random gate families");
    measure->add_option("--out", out_path, "also write the result to this file");
    measure->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* scatter = app.add_subcommand("scatter", "(ep, gt) cloud of Haar-random gates");
    scatter->add_option("--dims", dims_text, "subsystem dims, e.g. 2x2")->required();
    scatter->add_option("--samples", samples, "number of Haar samples")->required();
    scatter->add_option("--seed", seed, "master seed")->required();
    scatter->add_option("--out", out_path, "output prefix")->default_val("scatter");

    auto* therm = app.add_subcommand("thermalize", "Monte-Carlo trajectory of the invariants");
    therm->add_option("--gate", gate_text, "gate spec")->required();
    therm->add_option("--dims", dims_text, "override dims, e.g. 2x3");
    therm->add_option("--steps", steps, "evolution length")->required();
    therm->add_option("--trials", trials, "Monte-Carlo trials")->required();
    therm->add_option("--seed", seed, "master seed")->required();
    therm->add_option("--mode", mode, "fresh, fixed, or none")
        ->check(CLI::IsMember({"fresh", "fixed", "none"}));
    therm->add_option("--threads", threads, "worker threads (0 = all cores)");
    therm->add_option("--out", out_path, "trajectory CSV path")->default_val("trajectory.csv");

    auto* spectra = app.add_subcommand("spectra", "spectra of evolved permuted operators");
    spectra->add_option("--gate", gate_text, "gate spec")->required();
    spectra->add_option("--dims", dims_text, "override dims");
    spectra->add_option("--steps", step_list, "steps to sample, e.g. 2,3,4")
        ->required()->delimiter(',');
    spectra->add_option("--which", which, "reshuffled, pt, or both")
        ->check(CLI::IsMember({"reshuffled", "pt", "both"}));
    spectra->add_option("--seed", seed, "master seed")->required();
    spectra->add_option("--mode", mode, "fresh, fixed, or none")
        ->check(CLI::IsMember({"fresh", "fixed", "none"}));
    spectra->add_option("--out", out_path, "output prefix")->default_val("spectra");

    auto* verify = app.add_subcommand("verify", "run the invariant self-test suite");
    verify->add_flag("--quick", quick, "subset finishing in well under a minute");
    verify->add_option("--seed", seed, "self-test seed")->default_val(20240817ULL);
    verify->add_option("--out", out_path, "also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*measure) return run_measure(gate_text, seed_opt, out_path, format);
        if (*scatter) return run_scatter(dims_text, samples, seed, out_path);
        if (*therm)
            return run_thermalize(gate_text, dims_text, steps, trials, seed, mode, threads,
                                  out_path);
        if (*spectra)
            return run_spectra(gate_text, dims_text, step_list, which, seed, mode, out_path);
        if (*verify) return run_verify(quick, seed, out_path);
    } catch (const gl::GateSpecError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
