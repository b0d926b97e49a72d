#pragma once

#include "gatelab/bipartite.hpp"
#include "gatelab/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gatelab {

/// Euler angles (c1, c2, c3) of the two-qubit canonical form.
struct CartanCoords {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

/// The explicit 4x4 canonical-form matrix for the given angles.
BipartiteOperator cartan_gate(CartanCoords c);

/// Closed-form (e_p, g_t) of the canonical two-qubit gate.
std::pair<double, double> cartan_ep_gt(CartanCoords c);

struct LocalInvariants {
    cx G1;
    double G2 = 0.0;
    double E = 0.0;          ///< 1 - (3 + 2|G1| + G2)/8
    double E_swapped = 0.0;  ///< 1 - (3 + 2|G1| - G2)/8
};
LocalInvariants local_invariants_G(CartanCoords c);

/// exp(i t S) = cos(t) 1 + i sin(t) S on an n x n space.
BipartiteOperator fractional_swap(double t, int n);

/// DFT of order n^2 read bipartitely: <k a|F|j b> = exp(2 pi i (k + aN)(j + bN)/N^2)/N.
BipartiteOperator fourier_gate(int n);

/// Finite-N closed form for E(F_{N^2} S); tends to about 0.344 for large N.
double fourier_swapped_entanglement(int n);

BipartiteOperator cnot_gate();
BipartiteOperator dcnot_gate();

/// CNOT * S^alpha with the global phase discarded; alpha in [0, 1].
BipartiteOperator cs_alpha(double alpha);

/// P1 (x) 1 + P2 (x) uB with computational-basis projectors of ranks
/// (rank_r, n - rank_r).
BipartiteOperator controlled_unitary(int n, int rank_r, const Mat& u_b);

/// Diagonal unitary with phases exp(2 pi i eps xi), xi uniform on [-1/2, 1/2).
BipartiteOperator diagonal_interaction(Dims dims, double eps, RngStream& rng);

/// The 2-unitary qutrit permutation |i j> -> |i+j, i+2j> (mod 3).
BipartiteOperator perm_p9();

/// Controlled modular addition |i j> -> |i, i+j mod n>; n = 2 gives CNOT.
BipartiteOperator controlled_add(int n);

/// base * Ucue D(eps) Ucue^dag with phases exp(i eps xi), xi uniform in [-pi, pi).
std::vector<BipartiteOperator> perturbation_ensemble(const BipartiteOperator& base,
                                                     double eps, int trials, RngStream& rng);

enum class GateFamily {
    Id, Cnot, Dcnot, Swap, SqrtSwap, FractionalSwap, CsAlpha, Fourier,
    ControlledAdd, Diagonal, ControlledU, Cartan, P9, Haar, File,
};

/// Parsed gate description from the flat key=value mini-language.
struct GateSpec {
    GateFamily family = GateFamily::Id;
    Dims dims{2, 2};
    int n = 2;
    int rank = 0;  ///< 0 means "n/2" for ctrlu
    double t = 0.0, alpha = 0.0, eps = 0.0;
    CartanCoords cartan;
    std::optional<std::uint64_t> seed;
    std::string path;
};

/// Parse error with the byte offset where parsing stopped.
class GateSpecError : public std::runtime_error {
public:
    GateSpecError(std::size_t offset, const std::string& msg)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

GateSpec parse_gate_spec(const std::string& text);
std::string render_gate_spec(const GateSpec& spec);

/// Construct the gate described by a spec. Families with randomness (haar,
/// diag, ctrlu without a path) require spec.seed.
BipartiteOperator build_gate(const GateSpec& spec);

}  // namespace gatelab
