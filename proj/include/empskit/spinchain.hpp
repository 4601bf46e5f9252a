#pragma once

// Open Ising chains and their ground-state entanglement indicators.
//
//   H = -J sum_{i=1}^{N-1} s^z_i s^z_{i+1} - h sum_{i=1}^{N} s^z_i + sum_k c_k P_k
//
// with s^z = sigma^z / 2 and P_k arbitrary Pauli strings. Site i is qubit i,
// i.e. the (N - i)-th bit of the basis index.

#include <optional>
#include <string>
#include <vector>

#include "empskit/linalg.hpp"
#include "empskit/qcore.hpp"

namespace empskit {

struct PauliTerm {
    double coefficient = 0.0;
    /// One of I, X, Y, Z per site, site 1 first.
    std::string paulis;
};

struct SpinChainSpec {
    int sites = 5;
    double coupling = 1.0;  // J
    double field = 1.0;     // h
    std::vector<PauliTerm> extra_terms;
};

/// Nearest-neighbour chain without extra terms.
SpinChainSpec ising_chain(int sites = 5, double coupling = 1.0, double field = 1.0);
/// Five-site chain plus 4 X2X3X4 + 3 X1X3X4X5 + 3 X1X2X4X5.
SpinChainSpec long_range_chain(double coupling = 1.0, double field = 1.0);

/// Throws ValidationError for N outside [2, 12] or malformed Pauli strings.
void validate(const SpinChainSpec& spec);

/// Dense 2^N x 2^N Hamiltonian.
CMatrix build_hamiltonian(const SpinChainSpec& spec);

struct GroundStateResult {
    double energy = 0.0;
    PureState state = PureState::basis(1, 0);
    /// lambda_1 - lambda_0
    double gap = 0.0;
    /// gap < 1e-8; indicators evaluated on such a state are not meaningful.
    bool degenerate = false;
};

inline constexpr double kDegeneracyTol = 1e-8;

/// Lowest eigenpair. The eigenvector is phase-fixed so that its largest-magnitude
/// amplitude (first one on ties) is real and positive.
GroundStateResult ground_state(const CMatrix& hamiltonian);

/// min_{i<j} |S(rho_ij) - S(rho_i) - S(rho_j)| in bits. Requires n >= 3.
double entropy_criterion(const PureState& psi);

enum class SweepParameter { Coupling, Field, Coefficient };

struct SweepRow {
    double parameter = 0.0;
    double ground_energy = 0.0;
    double gap = 0.0;
    double eta = 0.0;
    double entropy = 0.0;
    bool degenerate = false;
};

/// Ground-state indicators as one parameter of `base` varies. For
/// SweepParameter::Coefficient, `term_index` selects which extra term is swept.
std::vector<SweepRow> indicator_sweep(const SpinChainSpec& base, SweepParameter parameter,
                                      std::span<const double> values, std::size_t term_index = 0);

}  // namespace empskit
