#include "empskit/spinchain.hpp"

#include <cmath>
#include <sstream>

#include "empskit/emps.hpp"
#include "empskit/error.hpp"

namespace empskit {

SpinChainSpec ising_chain(int sites, double coupling, double field) {
    SpinChainSpec spec;
    spec.sites = sites;
    spec.coupling = coupling;
    spec.field = field;
    return spec;
}

SpinChainSpec long_range_chain(double coupling, double field) {
    SpinChainSpec spec = ising_chain(5, coupling, field);
    spec.extra_terms = {
        {4.0, "IXXXI"},
        {3.0, "XIXXX"},
        {3.0, "XXIXX"},
    };
    return spec;
}

void validate(const SpinChainSpec& spec) {
    if (spec.sites < 2 || spec.sites > kMaxQubits) {
        std::ostringstream os;
        os << "spin chain: N = " << spec.sites << " outside 2.." << kMaxQubits;
        throw ValidationError(os.str());
    }
    if (!std::isfinite(spec.coupling) || !std::isfinite(spec.field)) {
        throw ValidationError("spin chain: J and h must be finite");
    }
    for (std::size_t t = 0; t < spec.extra_terms.size(); ++t) {
        const auto& term = spec.extra_terms[t];
        if (term.paulis.size() != static_cast<std::size_t>(spec.sites)) {
            std::ostringstream os;
            os << "spin chain: Pauli string '" << term.paulis << "' (term " << t + 1 << ") has length "
               << term.paulis.size() << ", expected N = " << spec.sites;
            throw ValidationError(os.str());
        }
        for (char c : term.paulis) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                std::ostringstream os;
                os << "spin chain: Pauli string '" << term.paulis << "' contains '" << c << "', expected I/X/Y/Z";
                throw ValidationError(os.str());
            }
        }
        if (!std::isfinite(term.coefficient)) throw ValidationError("spin chain: term coefficient must be finite");
    }
}

CMatrix build_hamiltonian(const SpinChainSpec& spec) {
    validate(spec);
    const int n = spec.sites;
    const std::size_t dim = std::size_t{1} << n;
    CMatrix h(dim, dim);

    // s^z = +1/2 on |0>, -1/2 on |1>.
    auto sz = [n](std::size_t k, int site) { return ((k >> qubit_bit(n, site)) & 1u) ? -0.5 : 0.5; };
    for (std::size_t k = 0; k < dim; ++k) {
        double e = 0.0;
        for (int i = 1; i < n; ++i) e -= spec.coupling * sz(k, i) * sz(k, i + 1);
        for (int i = 1; i <= n; ++i) e -= spec.field * sz(k, i);
        h(k, k) = e;
    }

    for (const auto& term : spec.extra_terms) {
        std::size_t flip = 0;
        for (int i = 1; i <= n; ++i) {
            const char p = term.paulis[i - 1];
            if (p == 'X' || p == 'Y') flip |= std::size_t{1} << qubit_bit(n, i);
        }
        for (std::size_t k = 0; k < dim; ++k) {
            // P|k> = phase |k ^ flip>
            Complex phase = 1.0;
            for (int i = 1; i <= n; ++i) {
                const bool one = (k >> qubit_bit(n, i)) & 1u;
                switch (term.paulis[i - 1]) {
                    case 'Z':
                        if (one) phase = -phase;
                        break;
                    case 'Y':
                        phase *= one ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
                        break;
                    default: break;
                }
            }
            h(k ^ flip, k) += term.coefficient * phase;
        }
    }
    return h;
}

GroundStateResult ground_state(const CMatrix& hamiltonian) {
    const auto spectrum = eig_hermitian(hamiltonian, true);
    const CMatrix& vecs = *spectrum.eigenvectors;
    const std::size_t dim = hamiltonian.rows();

    std::vector<Complex> amps(dim);
    std::size_t pivot = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        amps[r] = vecs(r, 0);
        if (std::abs(amps[r]) > std::abs(amps[pivot])) pivot = r;
    }
    const Complex fix = std::conj(amps[pivot]) / std::abs(amps[pivot]);
    for (auto& z : amps) z *= fix;
    amps[pivot] = std::abs(amps[pivot]);

    GroundStateResult out;
    out.energy = spectrum.eigenvalues.front();
    out.gap = dim > 1 ? spectrum.eigenvalues[1] - spectrum.eigenvalues[0] : 0.0;
    out.degenerate = dim > 1 && out.gap < kDegeneracyTol;
    out.state = PureState::normalized(std::move(amps));

    const auto h_psi = multiply(hamiltonian, out.state.amplitudes());
    double residual = 0.0;
    for (std::size_t r = 0; r < dim; ++r) residual = std::max(residual, std::abs(h_psi[r] - out.energy * out.state[r]));
    if (residual > 1e-8 * std::max(1.0, hamiltonian.max_abs())) {
        std::ostringstream os;
        os << "ground_state: eigen-residual " << residual << " exceeds tolerance";
        throw NumericError(os.str());
    }
    return out;
}

double entropy_criterion(const PureState& psi) {
    const int n = psi.num_qubits();
    if (n < 3) {
        std::ostringstream os;
        os << "entropy_criterion: needs at least 3 qubits, got " << n;
        throw ArgumentError(os.str());
    }
    std::vector<double> single(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        const int keep[1] = {i};
        single[i] = von_neumann_entropy(reduced_state(psi, keep));
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const int keep[2] = {i, j};
            const double pair = von_neumann_entropy(reduced_state(psi, keep));
            best = std::min(best, std::abs(pair - single[i] - single[j]));
        }
    }
    return best;
}

std::vector<SweepRow> indicator_sweep(const SpinChainSpec& base, SweepParameter parameter,
                                      std::span<const double> values, std::size_t term_index) {
    if (parameter == SweepParameter::Coefficient && term_index >= base.extra_terms.size()) {
        std::ostringstream os;
        os << "indicator_sweep: term index " << term_index << " but spec has " << base.extra_terms.size()
           << " extra terms";
        throw ArgumentError(os.str());
    }
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        if (!std::isfinite(value)) throw ArgumentError("indicator_sweep: sweep values must be finite");
        SpinChainSpec spec = base;
        switch (parameter) {
            case SweepParameter::Coupling: spec.coupling = value; break;
            case SweepParameter::Field: spec.field = value; break;
            case SweepParameter::Coefficient: spec.extra_terms[term_index].coefficient = value; break;
        }
        const auto ground = ground_state(build_hamiltonian(spec));
        SweepRow row;
        row.parameter = value;
        row.ground_energy = ground.energy;
        row.gap = ground.gap;
        row.degenerate = ground.degenerate;
        if (spec.sites >= 3) {
            row.eta = eta_indicator(emps_vector(ground.state));
            row.entropy = entropy_criterion(ground.state);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace empskit
