#include "empskit/emps.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "empskit/error.hpp"

namespace empskit {

namespace {

double lambda_min(const CMatrix& marginal) {
    return std::clamp(eigenvalues_2x2(marginal).first, 0.0, 0.5);
}

}  // namespace

EmpsVector::EmpsVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double e = values_[i];
        if (!(e >= -kPsdSlack && e <= 0.5 + kPsdSlack)) {
            std::ostringstream os;
            os << "EmpsVector: entry " << i + 1 << " = " << e << " outside [0, 1/2]";
            throw ValidationError(os.str());
        }
    }
}

double EmpsVector::at(int qubit) const {
    if (qubit < 1 || qubit > size()) {
        std::ostringstream os;
        os << "EmpsVector: qubit " << qubit << " out of range 1.." << size();
        throw ArgumentError(os.str());
    }
    return values_[qubit - 1];
}

double passive_energy(const DensityMatrix& rho, const CMatrix& hamiltonian) {
    if (!hamiltonian.square() || hamiltonian.rows() != rho.dim()) {
        std::ostringstream os;
        os << "passive_energy: Hamiltonian dimension " << hamiltonian.rows() << " does not match state dimension "
           << rho.dim();
        throw ArgumentError(os.str());
    }
    auto populations = eig_hermitian(rho.matrix(), false).eigenvalues;
    const auto levels = eig_hermitian(hamiltonian, false).eigenvalues;
    std::sort(populations.begin(), populations.end(), std::greater<>());
    double energy = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) energy += populations[k] * levels[k];
    return energy;
}

CMatrix local_hamiltonian() {
    CMatrix h(2, 2);
    h(1, 1) = 1.0;
    return h;
}

double emps(const PureState& psi, int qubit) { return lambda_min(single_qubit_marginal(psi, qubit)); }

double emps(const DensityMatrix& rho, int qubit) { return lambda_min(single_qubit_marginal(rho, qubit)); }

double emps(const State& state, int qubit) {
    return std::visit([qubit](const auto& s) { return emps(s, qubit); }, state);
}

EmpsVector emps_vector(const PureState& psi) {
    std::vector<double> values(static_cast<std::size_t>(psi.num_qubits()));
    for (int q = 1; q <= psi.num_qubits(); ++q) values[q - 1] = emps(psi, q);
    return EmpsVector(std::move(values));
}

EmpsVector emps_vector(const DensityMatrix& rho) {
    std::vector<double> values(static_cast<std::size_t>(rho.num_qubits()));
    for (int q = 1; q <= rho.num_qubits(); ++q) values[q - 1] = emps(rho, q);
    return EmpsVector(std::move(values));
}

EmpsVector emps_vector(const State& state) {
    return std::visit([](const auto& s) { return emps_vector(s); }, state);
}

PolygonReport polygon_check(const EmpsVector& v) {
    PolygonReport report;
    if (v.size() == 0) return report;
    const double total = total_emps(v);
    int worst = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < v.size(); ++i) {
        const double e = v.values()[i];
        const double slack = (total - e) - e;
        if (slack < worst_slack) {
            worst_slack = slack;
            worst = i + 1;
        }
    }
    report.worst_slack = worst_slack;
    report.satisfied = worst_slack >= -kSlackTol;
    if (!report.satisfied) report.violating_index = worst;
    return report;
}

double total_emps(const EmpsVector& v) {
    return std::accumulate(v.values().begin(), v.values().end(), 0.0);
}

double total_bound_slack(const EmpsVector& v) {
    const double total = total_emps(v);
    double worst = std::numeric_limits<double>::infinity();
    for (double e : v.values()) worst = std::min(worst, total - 2.0 * e);
    return worst;
}

bool satisfies_total_bound(const EmpsVector& v) { return total_bound_slack(v) >= -kSlackTol; }

double eta_indicator(const EmpsVector& v) {
    if (v.size() < 3) {
        std::ostringstream os;
        os << "eta_indicator: needs at least 3 qubits, got " << v.size();
        throw ArgumentError(os.str());
    }
    return polygon_check(v).worst_slack;
}

double eta_indicator(const State& state) {
    if (num_qubits(state) < 3) {
        std::ostringstream os;
        os << "eta_indicator: needs at least 3 qubits, got " << num_qubits(state);
        throw ArgumentError(os.str());
    }
    return eta_indicator(emps_vector(state));
}

double geometric_measure(const EmpsVector& v, int qubit) { return 2.0 * v.at(qubit); }

}  // namespace empskit
