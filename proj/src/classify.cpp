#include "empskit/classify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "empskit/error.hpp"

namespace empskit {

namespace {

constexpr double kParamTol = 1e-9;
constexpr double kZeroTol = 1e-9;

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

void check_qubits(const char* family, int n, int min_n) {
    if (n < min_n || n > kMaxQubits) {
        std::ostringstream os;
        os << family << ": n = " << n << " outside " << min_n << ".." << kMaxQubits;
        invalid(os.str());
    }
}

void check_noise(const char* family, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << family << ": noise weight v = " << v << " outside [0, 1]";
        invalid(os.str());
    }
}

std::vector<std::size_t> dicke_support(int n, int l) {
    std::vector<std::size_t> support;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t k = 0; k < dim; ++k) {
        if (std::popcount(k) == l) support.push_back(k);
    }
    return support;
}

DensityMatrix mix_with_identity(const PureState& psi, double v) {
    CMatrix m = CMatrix::outer(psi.amplitudes());
    m *= (1.0 - v);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += v / static_cast<double>(m.rows());
    return DensityMatrix::unchecked(std::move(m));
}

PureState uniform_w3() {
    const double w[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    return w_state(w);
}

}  // namespace

std::size_t dicke_support_size(int n, int l) {
    if (l < 0 || l > n) return 0;
    std::size_t c = 1;
    for (int i = 1; i <= l; ++i) c = c * static_cast<std::size_t>(n - l + i) / static_cast<std::size_t>(i);
    return c;
}

PureState ghz_state(int n, double theta) {
    check_qubits("ghz", n, 2);
    if (!(theta > 0.0 && theta <= M_PI / 4 + kParamTol)) {
        std::ostringstream os;
        os.precision(17);
        os << "ghz: theta = " << theta << " outside (0, pi/4]";
        invalid(os.str());
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    amps.front() = std::cos(theta);
    amps.back() = std::sin(theta);
    return PureState::normalized(std::move(amps));
}

PureState w_state(std::span<const double> coefficients) {
    const int n = static_cast<int>(coefficients.size());
    check_qubits("w", n, 2);
    double sum = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double a = coefficients[i];
        if (!(a >= 0.0)) {
            std::ostringstream os;
            os << "w: coefficient a_" << i + 1 << " = " << a << " is negative";
            invalid(os.str());
        }
        sum += a;
    }
    if (std::abs(sum - 1.0) > kParamTol) {
        std::ostringstream os;
        os.precision(17);
        os << "w: coefficients must sum to 1 (sum = " << sum << ")";
        invalid(os.str());
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    for (int q = 1; q <= n; ++q) amps[std::size_t{1} << qubit_bit(n, q)] = std::sqrt(coefficients[q - 1]);
    return PureState::normalized(std::move(amps));
}

PureState dicke_state(int n, int l) {
    check_qubits("dicke", n, 2);
    if (l < 1 || l > n - 1) {
        std::ostringstream os;
        os << "dicke: excitations l = " << l << " outside 1..n-1 = 1.." << n - 1;
        invalid(os.str());
    }
    const auto support = dicke_support(n, l);
    std::vector<Complex> amps(std::size_t{1} << n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (auto k : support) amps[k] = amp;
    return PureState::normalized(std::move(amps));
}

PureState generalized_dicke_state(int n, int l, std::span<const double> coefficients) {
    check_qubits("generalized_dicke", n, 2);
    if (l < 1 || l > n - 1) {
        std::ostringstream os;
        os << "generalized_dicke: excitations l = " << l << " outside 1..n-1 = 1.." << n - 1;
        invalid(os.str());
    }
    const auto support = dicke_support(n, l);
    if (coefficients.size() != support.size()) {
        std::ostringstream os;
        os << "generalized_dicke: expected " << support.size() << " coefficients, got " << coefficients.size();
        invalid(os.str());
    }
    double norm2 = 0.0;
    for (double c : coefficients) norm2 += c * c;
    if (std::abs(norm2 - 1.0) > kParamTol) {
        std::ostringstream os;
        os.precision(17);
        os << "generalized_dicke: squared coefficients must sum to 1 (sum = " << norm2 << ")";
        invalid(os.str());
    }
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t i = 0; i < support.size(); ++i) amps[support[i]] = coefficients[i];
    return PureState::normalized(std::move(amps));
}

PureState biseparable_state(Complex alpha, Complex beta, int position) {
    if (position < 1 || position > 3) {
        std::ostringstream os;
        os << "biseparable: position = " << position << " outside 1..3";
        invalid(os.str());
    }
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > kParamTol) {
        std::ostringstream os;
        os.precision(17);
        os << "biseparable: |alpha|^2 + |beta|^2 must equal 1 (got " << norm2 << ")";
        invalid(os.str());
    }
    // Both entangled qubits set: every bit except the factored one.
    const std::size_t both = 0b111u & ~(std::size_t{1} << qubit_bit(3, position));
    std::vector<Complex> amps(8);
    amps[0] = alpha;
    amps[both] = beta;
    return PureState::normalized(std::move(amps));
}

DensityMatrix noisy_w_state(double v) {
    check_noise("noisy_w", v);
    return mix_with_identity(uniform_w3(), v);
}

DensityMatrix noisy_ghz_state(double v) {
    check_noise("noisy_ghz", v);
    return mix_with_identity(ghz_state(3, M_PI / 4), v);
}

State build_state(const StateBuilderSpec& spec) {
    struct Visitor {
        State operator()(const GhzSpec& s) const { return ghz_state(s.n, s.theta); }
        State operator()(const WSpec& s) const { return w_state(s.coefficients); }
        State operator()(const DickeSpec& s) const { return dicke_state(s.n, s.l); }
        State operator()(const GeneralizedDickeSpec& s) const {
            return generalized_dicke_state(s.n, s.l, s.coefficients);
        }
        State operator()(const BiseparableSpec& s) const { return biseparable_state(s.alpha, s.beta, s.position); }
        State operator()(const NoisyWSpec& s) const { return noisy_w_state(s.v); }
        State operator()(const NoisyGhzSpec& s) const { return noisy_ghz_state(s.v); }
    };
    return std::visit(Visitor{}, spec);
}

// ---------------------------------------------------------------------------

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::FullySeparable: return "fully_separable";
        case Verdict::Biseparable: return "biseparable";
        case Verdict::WClassCompatible: return "w_class_compatible";
        case Verdict::GhzClass: return "ghz_class";
        case Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

std::string describe(const ClassLabel& label) {
    switch (label.verdict) {
        case Verdict::FullySeparable: return "fully separable";
        case Verdict::Biseparable: {
            std::ostringstream os;
            os << "biseparable, qubit " << label.cut.value_or(0) << " factored";
            return os.str();
        }
        case Verdict::WClassCompatible: return "W-or-GHZ region, genuinely entangled";
        case Verdict::GhzClass: return "GHZ class, W facet violated";
        case Verdict::Undetermined: return "undetermined, eta = 0 without biseparable pattern";
    }
    return "undetermined";
}

ClassLabel classify_three_qubit(const PureState& psi) {
    if (psi.num_qubits() != 3) {
        std::ostringstream os;
        os << "classify_three_qubit: expected 3 qubits, got " << psi.num_qubits();
        throw ArgumentError(os.str());
    }
    ClassLabel label;
    label.emps = emps_vector(psi);
    label.total = total_emps(label.emps);
    label.eta = eta_indicator(label.emps);

    label.evidence.push_back({"w_facet: E1+E2+E3 <= 1", label.total, 1.0, 1.0 - label.total});
    label.evidence.push_back({"eta: min_j (sum_{k!=j} E_k - E_j) > 0", label.eta, 0.0, label.eta});
    std::vector<int> zeros;
    for (int q = 1; q <= 3; ++q) {
        const double e = label.emps.at(q);
        label.evidence.push_back({"product_qubit_" + std::to_string(q) + ": E" + std::to_string(q) + " <= 1e-9", e,
                                  kZeroTol, kZeroTol - e});
        if (e <= kZeroTol) zeros.push_back(q);
    }

    if (label.total > 1.0 + kSlackTol) {
        label.verdict = Verdict::GhzClass;
        label.genuinely_entangled = true;
    } else if (label.eta > kSlackTol) {
        label.verdict = Verdict::WClassCompatible;
        label.genuinely_entangled = true;
    } else if (zeros.size() == 3) {
        label.verdict = Verdict::FullySeparable;
    } else if (zeros.size() == 1) {
        const int cut = zeros.front();
        const int j = cut == 1 ? 2 : 1;
        const int k = cut == 3 ? 2 : 3;
        const double gap = std::abs(label.emps.at(j) - label.emps.at(k));
        label.evidence.push_back({"schmidt_pair: E" + std::to_string(j) + " = E" + std::to_string(k), gap, kZeroTol,
                                  kZeroTol - gap});
        if (gap <= kZeroTol) {
            label.verdict = Verdict::Biseparable;
            label.cut = cut;
        } else {
            label.verdict = Verdict::Undetermined;
        }
    } else {
        label.verdict = Verdict::Undetermined;
    }
    return label;
}

PolytopeMembership polytope_membership_3q(const EmpsVector& v, PolytopeClass cls) {
    if (v.size() != 3) {
        std::ostringstream os;
        os << "polytope_membership_3q: expected 3 entries, got " << v.size();
        throw ArgumentError(os.str());
    }
    PolytopeMembership out;
    const double total = total_emps(v);
    for (int i = 1; i <= 3; ++i) {
        const std::string e = "E" + std::to_string(i);
        out.facets.push_back({e + " >= 0", v.at(i)});
        out.facets.push_back({e + " <= 1/2", 0.5 - v.at(i)});
    }
    for (int i = 1; i <= 3; ++i) {
        const double e = v.at(i);
        out.facets.push_back({"polygon_" + std::to_string(i), (total - e) - e});
    }
    if (cls == PolytopeClass::W) out.facets.push_back({"w_facet: E1+E2+E3 <= 1", 1.0 - total});

    out.member = true;
    for (const auto& f : out.facets) {
        if (f.slack < -kSlackTol) out.member = false;
    }
    return out;
}

// ---------------------------------------------------------------------------

CMatrix random_local_invertible(Rng& rng) {
    CMatrix g(2, 2);
    do {
        for (auto& z : g.data()) z = rng.complex_normal();
    } while (std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) < 1e-6);
    return g;
}

void apply_single_qubit(std::vector<Complex>& amps, int n, int qubit, const CMatrix& g) {
    const std::size_t mask = std::size_t{1} << qubit_bit(n, qubit);
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (k & mask) continue;
        const Complex a0 = amps[k];
        const Complex a1 = amps[k | mask];
        amps[k] = g(0, 0) * a0 + g(0, 1) * a1;
        amps[k | mask] = g(1, 0) * a0 + g(1, 1) * a1;
    }
}

std::vector<EmpsVector> slocc_orbit_sample(const PureState& psi, int count, std::uint64_t seed) {
    if (count < 1) throw ArgumentError("slocc_orbit_sample: count must be >= 1");
    const int n = psi.num_qubits();
    std::vector<EmpsVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Rng rng(seed + static_cast<std::uint64_t>(k));
        std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());
        for (int q = 1; q <= n; ++q) apply_single_qubit(amps, n, q, random_local_invertible(rng));
        out.push_back(emps_vector(PureState::normalized(std::move(amps))));
    }
    return out;
}

// ---------------------------------------------------------------------------

NoisyReport discriminate_noisy(const DensityMatrix& rho, NoisyFamily family) {
    if (rho.num_qubits() != 3) {
        std::ostringstream os;
        os << "discriminate_noisy: expected a 3-qubit state, got " << rho.num_qubits() << " qubits";
        throw ArgumentError(os.str());
    }
    NoisyReport report;
    report.family = family;
    // |W> has no |000> component; |GHZ> puts weight 1/2 there.
    const double p000 = rho(0, 0).real();
    report.v = family == NoisyFamily::W ? 8.0 * p000 : (0.5 - p000) * 8.0 / 3.0;
    report.emps = emps_vector(rho);
    report.total = total_emps(report.emps);
    report.predicted_total = family == NoisyFamily::W ? (2.0 + report.v) / 2.0 : 1.5;
    report.below_w_bound = report.total < report.w_bound;
    report.in_entangled_range = family == NoisyFamily::W ? report.v < 9.0 / 17.0 : report.v < 4.0 / 7.0;

    if (report.v >= -kParamTol && report.v <= 1.0 + kParamTol) {
        const double v = std::clamp(report.v, 0.0, 1.0);
        const auto reference = family == NoisyFamily::W ? noisy_w_state(v) : noisy_ghz_state(v);
        report.matches_family = (rho.matrix() - reference.matrix()).max_abs() <= kParamTol;
    }
    return report;
}

NoisyReport discriminate_noisy(NoisyFamily family, double v) {
    return discriminate_noisy(family == NoisyFamily::W ? noisy_w_state(v) : noisy_ghz_state(v), family);
}

}  // namespace empskit
