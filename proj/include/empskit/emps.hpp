#pragma once

// Passive-state energies of qubit marginals.
//
// Every qubit carries the local Hamiltonian H_i = E|1><1| and all energies are
// reported as multiples of E. The energy of the marginal passive state (EMPS)
// of qubit i is then the smallest eigenvalue of its reduced density matrix.
// For mixed inputs the same quantity is used and documented as the
// "marginal passive energy" of the state.

#include <optional>
#include <span>
#include <vector>

#include "empskit/qcore.hpp"

namespace empskit {

/// Slack below which an inequality counts as violated.
inline constexpr double kSlackTol = 1e-9;

/// Per-qubit marginal passive energies (E_1, ..., E_n), each in [0, 1/2].
class EmpsVector {
public:
    /// Throws ValidationError if any entry leaves [0, 1/2] by more than 1e-10.
    explicit EmpsVector(std::vector<double> values);

    int size() const noexcept { return static_cast<int>(values_.size()); }
    std::span<const double> values() const noexcept { return values_; }
    /// 1-based access matching qubit labels.
    double at(int qubit) const;

private:
    std::vector<double> values_;
};

struct PolygonReport {
    bool satisfied = true;
    /// min_i (sum_{j != i} E_j - E_i)
    double worst_slack = 0.0;
    /// 1-based qubit with the most negative slack, set only when violated.
    std::optional<int> violating_index;
};

/// Energy of the passive state of rho under H: eigenvalues of rho in descending
/// order paired with eigenvalues of H in ascending order.
double passive_energy(const DensityMatrix& rho, const CMatrix& hamiltonian);

/// E|1><1| on a single qubit, E = 1.
CMatrix local_hamiltonian();

double emps(const PureState& psi, int qubit);
double emps(const DensityMatrix& rho, int qubit);
double emps(const State& state, int qubit);

EmpsVector emps_vector(const PureState& psi);
EmpsVector emps_vector(const DensityMatrix& rho);
EmpsVector emps_vector(const State& state);

PolygonReport polygon_check(const EmpsVector& v);

double total_emps(const EmpsVector& v);
/// min_j (E_tot - 2 E_j); non-negative exactly when E_tot >= 2 E_j for every j.
double total_bound_slack(const EmpsVector& v);
bool satisfies_total_bound(const EmpsVector& v);

/// min_j (sum_{k != j} E_k - E_j). Requires at least three qubits.
double eta_indicator(const EmpsVector& v);
double eta_indicator(const State& state);

/// Geometric measure across the cut i | rest, taken as 2 * lambda_min.
double geometric_measure(const EmpsVector& v, int qubit);

}  // namespace empskit
