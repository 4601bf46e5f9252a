#pragma once

// Multi-qubit states and the dense operations the rest of the library builds on.
//
// Qubit labels run 1..n and qubit 1 is the most significant bit of the basis
// index, so amplitude k of a 3-qubit state is the coefficient of |s1 s2 s3>
// with k = 4*s1 + 2*s2 + s3.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "empskit/linalg.hpp"

namespace empskit {

inline constexpr int kMaxQubits = 12;

inline constexpr double kNormalizationTol = 1e-10;
inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdSlack = 1e-10;

/// Bit position (counted from the least significant bit) of 1-based qubit `q` in an n-qubit index.
constexpr int qubit_bit(int n, int q) { return n - q; }

/// Normalized amplitude vector over n qubits.
class PureState {
public:
    /// Validates length 2^n with 1 <= n <= 12 and unit norm within 1e-10.
    explicit PureState(std::vector<Complex> amps);

    /// Rescales `amps` to unit norm; zero vectors are rejected.
    static PureState normalized(std::vector<Complex> amps);
    static PureState basis(int n, std::size_t index);

    int num_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t k) const { return amps_[k]; }

private:
    struct Trusted {};
    PureState(std::vector<Complex> amps, int n, Trusted) : n_(n), amps_(std::move(amps)) {}

    int n_ = 0;
    std::vector<Complex> amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix on n qubits.
class DensityMatrix {
public:
    /// Checks hermiticity (1e-12), trace (1e-10) and eigenvalues >= -1e-10.
    explicit DensityMatrix(CMatrix entries);

    /// Skips validation. The caller guarantees the invariants hold, e.g. for
    /// results of partial traces or tensor products of valid operands.
    static DensityMatrix unchecked(CMatrix entries);
    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(int n);

    int num_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return m_.rows(); }
    const CMatrix& matrix() const noexcept { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    struct Trusted {};
    DensityMatrix(CMatrix entries, int n, Trusted) : n_(n), m_(std::move(entries)) {}

    int n_ = 0;
    CMatrix m_;
};

using State = std::variant<PureState, DensityMatrix>;

int num_qubits(const State& s);
DensityMatrix to_density(const State& s);

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced matrix on the `keep` qubits (1-based, distinct). The output's qubit
/// order follows `keep`, so keep = {2, 1} swaps the two factors.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// Same as partial_trace(DensityMatrix::from_pure(psi), keep) without forming the projector.
DensityMatrix reduced_state(const PureState& psi, std::span<const int> keep);

/// 2x2 marginal of qubit `q` computed directly from the amplitudes.
CMatrix single_qubit_marginal(const PureState& psi, int q);
CMatrix single_qubit_marginal(const DensityMatrix& rho, int q);

/// Eigenvalues of a 2x2 Hermitian matrix in ascending order, closed form.
std::pair<double, double> eigenvalues_2x2(const CMatrix& m);

/// -sum lambda log2 lambda over eigenvalues; entries in [-1e-10, 0) are treated as 0.
double entropy_bits(std::span<const double> eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace empskit
