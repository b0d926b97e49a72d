#include "gatelab/gate_zoo.hpp"

#include "gatelab/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace gatelab {

using std::numbers::pi;

BipartiteOperator cartan_gate(CartanCoords c) {
    const double cp = std::cos((c.c1 + c.c2) / 2), sp = std::sin((c.c1 + c.c2) / 2);
    const double cm = std::cos((c.c1 - c.c2) / 2), sm = std::sin((c.c1 - c.c2) / 2);
    const cx em = std::exp(cx(0, -c.c3 / 2)), ep = std::exp(cx(0, c.c3 / 2));
    const cx mi(0, -1);
    Mat u = Mat::Zero(4, 4);
    u(0, 0) = em * cm;       u(0, 3) = mi * em * sm;
    u(1, 1) = ep * cp;       u(1, 2) = mi * ep * sp;
    u(2, 1) = mi * ep * sp;  u(2, 2) = ep * cp;
    u(3, 0) = mi * em * sm;  u(3, 3) = em * cm;
    return {{2, 2}, std::move(u)};
}

std::pair<double, double> cartan_ep_gt(CartanCoords c) {
    const double s1 = std::pow(std::sin(c.c1), 2), s2 = std::pow(std::sin(c.c2), 2),
                 s3 = std::pow(std::sin(c.c3), 2);
    const double k1 = 1 - s1, k2 = 1 - s2, k3 = 1 - s3;
    const double ep = 2.0 / 3.0 * (s1 * k2 + s2 * k3 + s3 * k1);
    const double gt = (s1 + s2 + s3) / 3.0;
    return {ep, gt};
}

LocalInvariants local_invariants_G(CartanCoords c) {
    LocalInvariants inv;
    const double c1 = std::cos(c.c1), c2 = std::cos(c.c2), c3 = std::cos(c.c3);
    const double s1 = std::sin(c.c1), s2 = std::sin(c.c2), s3 = std::sin(c.c3);
    inv.G1 = cx(c1 * c1 * c2 * c2 * c3 * c3 - s1 * s1 * s2 * s2 * s3 * s3,
                0.25 * std::sin(2 * c.c1) * std::sin(2 * c.c2) * std::sin(2 * c.c3));
    inv.G2 = std::cos(2 * c.c1) + std::cos(2 * c.c2) + std::cos(2 * c.c3);
    inv.E = 1.0 - (3.0 + 2.0 * std::abs(inv.G1) + inv.G2) / 8.0;
    inv.E_swapped = 1.0 - (3.0 + 2.0 * std::abs(inv.G1) - inv.G2) / 8.0;
    return inv;
}

BipartiteOperator fractional_swap(double t, int n) {
    BipartiteOperator s = swap_operator(n);
    s.mat = std::cos(t) * Mat::Identity(n * n, n * n) + cx(0, std::sin(t)) * s.mat;
    return s;
}

BipartiteOperator fourier_gate(int n) {
    if (n < 2) throw std::invalid_argument("fourier_gate: n must be >= 2");
    const int d = n * n;
    Mat f(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            f(a, b) = std::exp(cx(0, 2 * pi * ((a * b) % d) / d)) / static_cast<double>(n);
    return {{n, n}, std::move(f)};
}

double fourier_swapped_entanglement(int n) {
    const double nn = n;
    double sum = 0.0;
    for (int k = 1; k < n; ++k) {
        const double num = std::pow(std::sin(k * pi / nn), 2);
        const double den = std::pow(std::sin(pi / nn - k * pi / (nn * nn)), 2);
        sum += k * num / den;
    }
    return 1.0 - (nn * nn * nn + 2.0 * sum) / std::pow(nn, 4);
}

BipartiteOperator cnot_gate() { return controlled_add(2); }

BipartiteOperator dcnot_gate() {
    BipartiteOperator c = cnot_gate();
    c.mat = c.mat * swap_operator(2).mat;
    return c;
}

BipartiteOperator cs_alpha(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("cs_alpha: alpha must lie in [0, 1]");
    BipartiteOperator g = fractional_swap(pi * alpha / 2, 2);
    g.mat = cnot_gate().mat * g.mat;
    return g;
}

BipartiteOperator controlled_unitary(int n, int rank_r, const Mat& u_b) {
    if (n < 2) throw std::invalid_argument("controlled_unitary: n must be >= 2");
    if (rank_r < 1 || rank_r > n - 1)
        throw std::invalid_argument("controlled_unitary: rank must lie in [1, n-1]");
    if (u_b.rows() != n || u_b.cols() != n || !is_unitary(u_b))
        throw std::invalid_argument("controlled_unitary: inner gate must be unitary of order n");
    BipartiteOperator u{{n, n}, Mat::Zero(n * n, n * n)};
    for (int i = 0; i < n; ++i) {
        if (i < rank_r)
            u.mat.block(i * n, i * n, n, n) = Mat::Identity(n, n);
        else
            u.mat.block(i * n, i * n, n, n) = u_b;
    }
    return u;
}

BipartiteOperator diagonal_interaction(Dims dims, double eps, RngStream& rng) {
    dims.validate();
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("diagonal_interaction: eps must lie in [0, 1]");
    const int d = dims.total();
    BipartiteOperator u{dims, Mat::Zero(d, d)};
    for (int k = 0; k < d; ++k)
        u.mat(k, k) = std::exp(cx(0, 2 * pi * eps * rng.uniform(-0.5, 0.5)));
    return u;
}

BipartiteOperator perm_p9() {
    BipartiteOperator p{{3, 3}, Mat::Zero(9, 9)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            p.mat(((i + j) % 3) * 3 + ((i + 2 * j) % 3), i * 3 + j) = 1.0;
    return p;
}

BipartiteOperator controlled_add(int n) {
    if (n < 2) throw std::invalid_argument("controlled_add: n must be >= 2");
    BipartiteOperator c{{n, n}, Mat::Zero(n * n, n * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            c.mat(i * n + (i + j) % n, i * n + j) = 1.0;
    return c;
}

std::vector<BipartiteOperator> perturbation_ensemble(const BipartiteOperator& base,
                                                     double eps, int trials, RngStream& rng) {
    require_unitary(base);
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("perturbation_ensemble: eps must lie in [0, 1]");
    const int d = base.dims.total();
    std::vector<BipartiteOperator> out;
    out.reserve(static_cast<std::size_t>(trials));
    for (int k = 0; k < trials; ++k) {
        const Mat u = haar_unitary(d, rng);
        Eigen::VectorXcd phases(d);
        for (int j = 0; j < d; ++j) phases(j) = std::exp(cx(0, eps * rng.uniform(-pi, pi)));
        Mat v = u * phases.asDiagonal() * u.adjoint();
        out.push_back({base.dims, base.mat * v});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gate-spec mini-language: `name` | `name:key=value(,key=value)*`
// ---------------------------------------------------------------------------

namespace {

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t value_offset;
};

double parse_real(const KeyValue& kv) {
    try {
        std::size_t used = 0;
        double v = std::stod(kv.value, &used);
        if (used != kv.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw GateSpecError(kv.value_offset, "malformed real value for key '" + kv.key + "'");
    }
}

long long parse_int(const KeyValue& kv) {
    long long v = 0;
    auto [p, ec] = std::from_chars(kv.value.data(), kv.value.data() + kv.value.size(), v);
    if (ec != std::errc{} || p != kv.value.data() + kv.value.size())
        throw GateSpecError(kv.value_offset, "malformed integer value for key '" + kv.key + "'");
    return v;
}

Dims parse_dims(const KeyValue& kv) {
    const auto x = kv.value.find('x');
    if (x == std::string::npos)
        throw GateSpecError(kv.value_offset, "dims must use the form NxM");
    KeyValue a{kv.key, kv.value.substr(0, x), kv.value_offset};
    KeyValue b{kv.key, kv.value.substr(x + 1), kv.value_offset + x + 1};
    Dims d{static_cast<int>(parse_int(a)), static_cast<int>(parse_int(b))};
    if (d.n < 2 || d.m < 2) throw GateSpecError(kv.value_offset, "dims components must be >= 2");
    return d;
}

const std::map<std::string, GateFamily> kFamilies = {
    {"id", GateFamily::Id},         {"cnot", GateFamily::Cnot},
    {"dcnot", GateFamily::Dcnot},   {"swap", GateFamily::Swap},
    {"sqrtswap", GateFamily::SqrtSwap}, {"fswap", GateFamily::FractionalSwap},
    {"csalpha", GateFamily::CsAlpha},   {"fourier", GateFamily::Fourier},
    {"cadd", GateFamily::ControlledAdd}, {"diag", GateFamily::Diagonal},
    {"ctrlu", GateFamily::ControlledU},  {"cartan", GateFamily::Cartan},
    {"p9", GateFamily::P9},         {"haar", GateFamily::Haar},
    {"file", GateFamily::File},
};

}  // namespace

GateSpec parse_gate_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    auto fam = kFamilies.find(name);
    if (fam == kFamilies.end()) throw GateSpecError(0, "unknown gate family '" + name + "'");

    GateSpec spec;
    spec.family = fam->second;

    std::vector<KeyValue> kvs;
    if (colon != std::string::npos) {
        // `file:` takes the remainder verbatim as a path
        if (spec.family == GateFamily::File) {
            spec.path = text.substr(colon + 1);
            if (spec.path.empty()) throw GateSpecError(colon + 1, "expected a file path");
            return spec;
        }
        std::size_t pos = colon + 1;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            const std::string item = text.substr(pos, comma - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw GateSpecError(pos, "expected key=value");
            kvs.push_back({item.substr(0, eq), item.substr(eq + 1), pos + eq + 1});
            pos = comma + 1;
        }
    } else if (spec.family == GateFamily::File) {
        throw GateSpecError(text.size(), "file requires a path, e.g. file:gate.json");
    }

    auto expect_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& kv : kvs) {
            bool ok = false;
            for (const char* k : allowed)
                if (kv.key == k) ok = true;
            if (!ok)
                throw GateSpecError(kv.value_offset - kv.key.size() - 1,
                                    "key '" + kv.key + "' not valid for family '" + name + "'");
        }
    };
    auto get = [&](const std::string& key) -> const KeyValue* {
        for (const auto& kv : kvs)
            if (kv.key == key) return &kv;
        return nullptr;
    };

    switch (spec.family) {
        case GateFamily::Id:
        case GateFamily::Haar:
            expect_keys({"dims", "seed"});
            if (const auto* kv = get("dims")) spec.dims = parse_dims(*kv);
            break;
        case GateFamily::Cnot:
        case GateFamily::Dcnot:
        case GateFamily::P9:
            expect_keys({});
            break;
        case GateFamily::Swap:
        case GateFamily::SqrtSwap:
        case GateFamily::Fourier:
        case GateFamily::ControlledAdd:
            expect_keys({"n"});
            break;
        case GateFamily::FractionalSwap:
            expect_keys({"t", "n"});
            if (const auto* kv = get("t")) spec.t = parse_real(*kv);
            break;
        case GateFamily::CsAlpha:
            expect_keys({"alpha"});
            if (const auto* kv = get("alpha")) {
                spec.alpha = parse_real(*kv);
                if (spec.alpha < 0.0 || spec.alpha > 1.0)
                    throw GateSpecError(kv->value_offset, "alpha out of range [0, 1]");
            }
            break;
        case GateFamily::Diagonal:
            expect_keys({"eps", "dims", "seed"});
            if (const auto* kv = get("eps")) {
                spec.eps = parse_real(*kv);
                if (spec.eps < 0.0 || spec.eps > 1.0)
                    throw GateSpecError(kv->value_offset, "eps out of range [0, 1]");
            }
            if (const auto* kv = get("dims")) spec.dims = parse_dims(*kv);
            break;
        case GateFamily::ControlledU:
            expect_keys({"n", "rank", "seed", "path"});
            if (const auto* kv = get("rank")) spec.rank = static_cast<int>(parse_int(*kv));
            if (const auto* kv = get("path")) spec.path = kv->value;
            break;
        case GateFamily::Cartan:
            expect_keys({"c1", "c2", "c3"});
            if (const auto* kv = get("c1")) spec.cartan.c1 = parse_real(*kv);
            if (const auto* kv = get("c2")) spec.cartan.c2 = parse_real(*kv);
            if (const auto* kv = get("c3")) spec.cartan.c3 = parse_real(*kv);
            break;
        case GateFamily::File:
            break;
    }

    if (const auto* kv = get("n")) {
        spec.n = static_cast<int>(parse_int(*kv));
        if (spec.n < 2) throw GateSpecError(kv->value_offset, "n must be >= 2");
        spec.dims = {spec.n, spec.n};
    }
    if (const auto* kv = get("seed")) spec.seed = static_cast<std::uint64_t>(parse_int(*kv));

    if (spec.family == GateFamily::ControlledU && spec.rank != 0 &&
        (spec.rank < 1 || spec.rank > spec.n - 1))
        throw GateSpecError(0, "ctrlu rank out of range [1, n-1]");
    return spec;
}

std::string render_gate_spec(const GateSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    auto dims_str = [&] { return std::to_string(spec.dims.n) + "x" + std::to_string(spec.dims.m); };
    switch (spec.family) {
        case GateFamily::Id: os << "id:dims=" << dims_str(); break;
        case GateFamily::Cnot: os << "cnot"; break;
        case GateFamily::Dcnot: os << "dcnot"; break;
        case GateFamily::Swap: os << "swap:n=" << spec.n; break;
        case GateFamily::SqrtSwap: os << "sqrtswap:n=" << spec.n; break;
        case GateFamily::FractionalSwap: os << "fswap:t=" << spec.t << ",n=" << spec.n; break;
        case GateFamily::CsAlpha: os << "csalpha:alpha=" << spec.alpha; break;
        case GateFamily::Fourier: os << "fourier:n=" << spec.n; break;
        case GateFamily::ControlledAdd: os << "cadd:n=" << spec.n; break;
        case GateFamily::Diagonal:
            os << "diag:eps=" << spec.eps << ",dims=" << dims_str();
            if (spec.seed) os << ",seed=" << *spec.seed;
            break;
        case GateFamily::ControlledU:
            os << "ctrlu:n=" << spec.n;
            if (spec.rank != 0) os << ",rank=" << spec.rank;
            if (!spec.path.empty()) os << ",path=" << spec.path;
            else if (spec.seed) os << ",seed=" << *spec.seed;
            break;
        case GateFamily::Cartan:
            os << "cartan:c1=" << spec.cartan.c1 << ",c2=" << spec.cartan.c2
               << ",c3=" << spec.cartan.c3;
            break;
        case GateFamily::P9: os << "p9"; break;
        case GateFamily::Haar:
            os << "haar:dims=" << dims_str();
            if (spec.seed) os << ",seed=" << *spec.seed;
            break;
        case GateFamily::File: os << "file:" << spec.path; break;
    }
    return os.str();
}

BipartiteOperator build_gate(const GateSpec& spec) {
    auto need_seed = [&]() -> RngStream {
        if (!spec.seed) throw std::invalid_argument("gate spec requires an explicit seed");
        return RngStream(*spec.seed);
    };
    switch (spec.family) {
        case GateFamily::Id:
            return {spec.dims, Mat::Identity(spec.dims.total(), spec.dims.total())};
        case GateFamily::Cnot: return cnot_gate();
        case GateFamily::Dcnot: return dcnot_gate();
        case GateFamily::Swap: return swap_operator(spec.n);
        case GateFamily::SqrtSwap: return fractional_swap(pi / 4, spec.n);
        case GateFamily::FractionalSwap: return fractional_swap(spec.t, spec.n);
        case GateFamily::CsAlpha: return cs_alpha(spec.alpha);
        case GateFamily::Fourier: return fourier_gate(spec.n);
        case GateFamily::ControlledAdd: return controlled_add(spec.n);
        case GateFamily::Diagonal: {
            RngStream rng = need_seed();
            return diagonal_interaction(spec.dims, spec.eps, rng);
        }
        case GateFamily::ControlledU: {
            const int rank = spec.rank == 0 ? spec.n / 2 : spec.rank;
            Mat u_b;
            if (!spec.path.empty()) {
                u_b = load_square_matrix_json(spec.path);
            } else {
                RngStream rng = need_seed();
                u_b = haar_unitary(spec.n, rng);
            }
            return controlled_unitary(spec.n, rank, u_b);
        }
        case GateFamily::Cartan: return cartan_gate(spec.cartan);
        case GateFamily::P9: return perm_p9();
        case GateFamily::Haar: {
            RngStream rng = need_seed();
            return {spec.dims, haar_unitary(spec.dims.total(), rng)};
        }
        case GateFamily::File: return load_matrix_json(spec.path);
    }
    throw std::logic_error("unreachable gate family");
}

}  // namespace gatelab
