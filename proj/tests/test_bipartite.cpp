#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gatelab/bipartite.hpp"
#include "gatelab/dense_linalg.hpp"
#include "gatelab/gate_zoo.hpp"

#include "helpers.hpp"

#include <numeric>

using namespace gatelab;
using testutil::max_abs_diff;

namespace {

BipartiteOperator random_gate(Dims dims, RngStream& rng) {
    return {dims, haar_unitary(dims.total(), rng)};
}

}  // namespace

TEST_CASE("reshuffle matches the explicit index permutation") {
    RngStream rng(101);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}, Dims{3, 3}}) {
        const BipartiteOperator op = random_gate(dims, rng);
        const Mat r = reshuffle(op);
        CHECK(r.rows() == dims.n * dims.n);
        CHECK(r.cols() == dims.m * dims.m);
        CHECK(max_abs_diff(r, testutil::reshuffle_oracle(op)) == 0.0);
    }
}

TEST_CASE("reshuffled identity is rank one with singular value n") {
    BipartiteOperator id{{2, 2}, Mat::Identity(4, 4)};
    const std::vector<double> sv = singular_values(reshuffle(id));
    CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("SWAP is a fixed point of reshuffling") {
    for (int n : {2, 3, 4}) {
        const BipartiteOperator s = swap_operator(n);
        CHECK(max_abs_diff(reshuffle(s), s.mat) == 0.0);
    }
}

TEST_CASE("reshuffle is an involution on square dims and preserves the norm") {
    RngStream rng(102);
    for (Dims dims : {Dims{2, 2}, Dims{3, 3}}) {
        const BipartiteOperator op = random_gate(dims, rng);
        const Mat r = reshuffle(op);
        CHECK(std::abs(r.squaredNorm() - op.mat.squaredNorm()) < 1e-10);
        CHECK(max_abs_diff(reshuffle({dims, r}), op.mat) == 0.0);
    }
    const BipartiteOperator rect = random_gate({2, 3}, rng);
    CHECK(std::abs(reshuffle(rect).squaredNorm() - rect.mat.squaredNorm()) < 1e-10);
}

TEST_CASE("partial transpose matches the explicit permutation and is an involution") {
    RngStream rng(103);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
        const BipartiteOperator op = random_gate(dims, rng);
        const BipartiteOperator pt = partial_transpose(op);
        CHECK(max_abs_diff(pt.mat, testutil::partial_transpose_oracle(op)) == 0.0);
        CHECK(max_abs_diff(partial_transpose(pt).mat, op.mat) == 0.0);
    }
}

TEST_CASE("partial transpose fixes diagonals and transposes the A factor of products") {
    RngStream rng(104);
    Mat d = Mat::Zero(6, 6);
    for (int i = 0; i < 6; ++i) d(i, i) = std::exp(cx(0, rng.uniform(0, 6.28)));
    const BipartiteOperator diag{{2, 3}, d};
    CHECK(max_abs_diff(partial_transpose(diag).mat, d) == 0.0);

    const Mat u_a = haar_unitary(2, rng);
    const Mat u_b = haar_unitary(3, rng);
    const BipartiteOperator prod{{2, 3}, testutil::kron(u_a, u_b)};
    CHECK(max_abs_diff(partial_transpose(prod).mat, testutil::kron(u_a.transpose(), u_b)) == 0.0);
}

TEST_CASE("swap_operator is the involutive permutation exchanging the factors") {
    const BipartiteOperator s2 = swap_operator(2);
    // basis order 00, 01, 10, 11; middle two rows exchanged
    Mat expect(4, 4);
    expect << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK(max_abs_diff(s2.mat, expect) == 0.0);
    for (int n = 2; n <= 5; ++n) {
        const BipartiteOperator s = swap_operator(n);
        CHECK(max_abs_diff(s.mat * s.mat, Mat::Identity(n * n, n * n)) == 0.0);
        CHECK(is_unitary(s.mat));
    }
}

TEST_CASE("schmidt spectrum: landmark gates and the independent SVD oracle") {
    const std::vector<double> sw = schmidt_spectrum(swap_operator(2));
    for (double v : sw) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> cn = schmidt_spectrum(cnot_gate());
    CHECK(cn[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cn[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cn[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cn[3] == doctest::Approx(0.0).epsilon(1e-12));

    RngStream rng(105);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
        const BipartiteOperator op = random_gate(dims, rng);
        const std::vector<double> got = schmidt_spectrum(op);
        const std::vector<double> expect = testutil::schmidt_oracle(op);
        REQUIRE(got.size() == expect.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    }
}

TEST_CASE("schmidt spectrum of a local product is rank one") {
    RngStream rng(106);
    const BipartiteOperator prod{{3, 3}, testutil::kron(haar_unitary(3, rng), haar_unitary(3, rng))};
    const std::vector<double> sp = schmidt_spectrum(prod);
    CHECK(sp[0] == doctest::Approx(9.0).epsilon(1e-10));
    for (std::size_t i = 1; i < sp.size(); ++i) CHECK(sp[i] < 1e-10);
}

TEST_CASE("schmidt spectrum sums to n*m and is zero-padded to length n^2") {
    RngStream rng(107);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 3}}) {
        for (int k = 0; k < 100; ++k) {
            const std::vector<double> sp = schmidt_spectrum(random_gate(dims, rng));
            CHECK(sp.size() == static_cast<std::size_t>(dims.n) * dims.n);
            const double sum = std::accumulate(sp.begin(), sp.end(), 0.0);
            CHECK(sum == doctest::Approx(dims.total()).epsilon(1e-8));
            for (double v : sp) CHECK(v >= 0.0);
            CHECK(std::is_sorted(sp.rbegin(), sp.rend()));
        }
    }
}

TEST_CASE("auxiliary density matrices are states with the documented structure") {
    RngStream rng(108);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}}) {
        const BipartiteOperator op = random_gate(dims, rng);
        for (const Mat& rho : {density_R(op), density_T(op)}) {
            CHECK(max_abs_diff(rho, rho.adjoint()) < 1e-12);
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
            for (double ev : hermitian_eigenvalues(rho)) {
                CHECK(ev > -1e-12);
                CHECK(ev < 1.0 + 1e-12);
            }
        }
    }

    const BipartiteOperator s = swap_operator(3);
    CHECK(max_abs_diff(density_R(s), Mat::Identity(9, 9) / 9.0) < 1e-12);

    const BipartiteOperator cu = controlled_unitary(4, 2, haar_unitary(4, rng));
    CHECK(max_abs_diff(density_T(cu), Mat::Identity(16, 16) / 16.0) < 1e-10);
    const std::vector<double> ev = hermitian_eigenvalues(density_R(cu));
    int rank = 0;
    for (double v : ev) rank += v > 1e-10;
    CHECK(rank <= 2);
}

TEST_CASE("haar_unitary is deterministic, unitary, and Haar on average") {
    RngStream a(42), b(42);
    const Mat u1 = haar_unitary(5, a);
    const Mat u2 = haar_unitary(5, b);
    CHECK(max_abs_diff(u1, u2) == 0.0);
    CHECK(is_unitary(u1));

    RngStream rng(109);
    double sum = 0.0;
    const int samples = 10000;
    for (int k = 0; k < samples; ++k) sum += std::norm(haar_unitary(4, rng).trace());
    // form factor at the first step is 1
    CHECK(sum / samples == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("haar_state is normalized and deterministic") {
    RngStream a(7), b(7);
    const Eigen::VectorXcd p = haar_state(6, a);
    CHECK(std::abs(p.norm() - 1.0) < 1e-12);
    CHECK((p - haar_state(6, b)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_local_product agrees with the explicit Kronecker product") {
    RngStream rng(110);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}}) {
        const Mat u_a = haar_unitary(dims.n, rng);
        const Mat u_b = haar_unitary(dims.m, rng);
        Mat w = haar_unitary(dims.total(), rng);
        const Mat expect = testutil::kron(u_a, u_b) * w;
        apply_local_product(u_a, u_b, w);
        CHECK(max_abs_diff(w, expect) < 1e-12);
    }
}

TEST_CASE("mismatched dims are rejected") {
    BipartiteOperator bad{{2, 3}, Mat::Identity(4, 4)};
    CHECK_THROWS_AS(reshuffle(bad), std::invalid_argument);
    CHECK_THROWS_AS(partial_transpose(bad), std::invalid_argument);
    CHECK_THROWS_AS(swap_operator(1), std::invalid_argument);
}
