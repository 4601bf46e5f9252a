#pragma once

// SLOCC classification of multi-qubit states from their EMPS vectors.
//
// Three-qubit polytopes, in units of E:
//   GHZ class: 0 <= E_i <= 1/2 and E_i <= sum_{j != i} E_j
//   W class:   the GHZ polytope cut by E_1 + E_2 + E_3 <= 1
// A total above 1 therefore certifies GHZ-type entanglement. Below that facet the
// two classes overlap and only eta > 0 (genuine tripartite entanglement) is reported.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "empskit/emps.hpp"
#include "empskit/qcore.hpp"
#include "empskit/random.hpp"

namespace empskit {

// ---------------------------------------------------------------------------
// State families

/// cos(theta)|0...0> + sin(theta)|1...1>, theta in (0, pi/4].
struct GhzSpec {
    int n = 3;
    double theta = M_PI / 4;
};

/// sum_i sqrt(a_i) |0..1_i..0>, a_i >= 0 and sum a_i = 1.
struct WSpec {
    std::vector<double> coefficients;
};

/// Uniform superposition of all n-qubit basis states with l ones, 1 <= l <= n-1.
struct DickeSpec {
    int n = 3;
    int l = 1;
};

/// Dicke support with per-configuration real amplitudes (sum of squares = 1),
/// ordered by ascending basis index.
struct GeneralizedDickeSpec {
    int n = 3;
    int l = 1;
    std::vector<double> coefficients;
};

/// |0> on qubit `position` times alpha|00> + beta|11> on the remaining two qubits.
struct BiseparableSpec {
    Complex alpha = M_SQRT1_2;
    Complex beta = M_SQRT1_2;
    int position = 3;
};

/// (1 - v)|W><W| + v/8 * 1 with |W> the uniform 3-qubit W state.
struct NoisyWSpec {
    double v = 0.0;
};

/// (1 - v)|GHZ><GHZ| + v/8 * 1 with |GHZ> = (|000> + |111>)/sqrt(2).
struct NoisyGhzSpec {
    double v = 0.0;
};

using StateBuilderSpec =
    std::variant<GhzSpec, WSpec, DickeSpec, GeneralizedDickeSpec, BiseparableSpec, NoisyWSpec, NoisyGhzSpec>;

/// Throws ValidationError naming the violated constraint.
State build_state(const StateBuilderSpec& spec);

PureState ghz_state(int n, double theta);
PureState w_state(std::span<const double> coefficients);
PureState dicke_state(int n, int l);
PureState generalized_dicke_state(int n, int l, std::span<const double> coefficients);
PureState biseparable_state(Complex alpha, Complex beta, int position);
DensityMatrix noisy_w_state(double v);
DensityMatrix noisy_ghz_state(double v);

/// Number of basis states carrying exactly l excitations on n qubits.
std::size_t dicke_support_size(int n, int l);

// ---------------------------------------------------------------------------
// Three-qubit classification

enum class Verdict {
    FullySeparable,
    Biseparable,
    /// Inside the W polytope with eta > 0: genuinely entangled, W or GHZ.
    WClassCompatible,
    GhzClass,
    /// eta = 0 without the biseparable pattern of EMPS values.
    Undetermined,
};

struct Evidence {
    std::string facet;
    double value = 0.0;
    double threshold = 0.0;
    /// Positive when the inequality named by `facet` holds with room to spare.
    double slack = 0.0;
};

struct ClassLabel {
    Verdict verdict = Verdict::Undetermined;
    /// Factored-out qubit for Biseparable verdicts.
    std::optional<int> cut;
    bool genuinely_entangled = false;
    EmpsVector emps{{}};
    double total = 0.0;
    double eta = 0.0;
    std::vector<Evidence> evidence;
};

/// Short machine name, e.g. "ghz_class".
std::string verdict_name(Verdict v);
/// Human-readable description, e.g. "W-or-GHZ region, genuinely entangled".
std::string describe(const ClassLabel& label);

ClassLabel classify_three_qubit(const PureState& psi);

enum class PolytopeClass { W, Ghz };

struct FacetSlack {
    std::string facet;
    double slack = 0.0;
};

struct PolytopeMembership {
    bool member = false;
    std::vector<FacetSlack> facets;
};

PolytopeMembership polytope_membership_3q(const EmpsVector& v, PolytopeClass cls);

// ---------------------------------------------------------------------------
// SLOCC orbit sampling

/// Applies `count` random local invertible operators g_1 (x) ... (x) g_n to psi
/// and returns the EMPS vector of each renormalized image. Sample k draws from
/// an engine seeded with seed + k, so any subset of samples is reproducible.
std::vector<EmpsVector> slocc_orbit_sample(const PureState& psi, int count, std::uint64_t seed = kDefaultSeed);

/// Random 2x2 complex Gaussian matrix with |det| >= 1e-6.
CMatrix random_local_invertible(Rng& rng);
/// Applies a 2x2 operator to one qubit of an amplitude vector in place.
void apply_single_qubit(std::vector<Complex>& amps, int n, int qubit, const CMatrix& g);

// ---------------------------------------------------------------------------
// Noisy W / GHZ discrimination

enum class NoisyFamily { W, Ghz };

struct NoisyReport {
    NoisyFamily family = NoisyFamily::W;
    /// Noise weight recovered from the state.
    double v = 0.0;
    /// rho equals the family member at `v` within 1e-9 entrywise.
    bool matches_family = false;
    EmpsVector emps{{}};
    double total = 0.0;
    /// (2 + v)/2 for W, 3/2 for GHZ.
    double predicted_total = 0.0;
    /// 43/34: supremum of the W total over the genuinely entangled range v < 9/17.
    double w_bound = 43.0 / 34.0;
    bool below_w_bound = false;
    /// v < 9/17 (W) or v < 4/7 (GHZ): the range where the state is genuinely entangled.
    bool in_entangled_range = false;
};

NoisyReport discriminate_noisy(const DensityMatrix& rho, NoisyFamily family);
NoisyReport discriminate_noisy(NoisyFamily family, double v);

}  // namespace empskit
