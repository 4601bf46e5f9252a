#include "empskit/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "empskit/error.hpp"

namespace empskit {

namespace {

int qubits_for_dim(std::size_t dim, const char* what) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        std::ostringstream os;
        os << what << ": dimension " << dim << " is not a power of two >= 2";
        throw ValidationError(os.str());
    }
    const int n = std::countr_zero(dim);
    if (n > kMaxQubits) {
        std::ostringstream os;
        os << what << ": " << n << " qubits exceeds the " << kMaxQubits << "-qubit capacity";
        throw CapacityError(os.str());
    }
    return n;
}

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return s;
}

void check_keep(int n, std::span<const int> keep) {
    if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int q : keep) {
        if (q < 1 || q > n) {
            std::ostringstream os;
            os << "partial_trace: qubit " << q << " out of range 1.." << n;
            throw ArgumentError(os.str());
        }
        if (seen[q]) {
            std::ostringstream os;
            os << "partial_trace: qubit " << q << " listed twice";
            throw ArgumentError(os.str());
        }
        seen[q] = true;
    }
}

// Full-register offsets for every value of the kept and traced sub-registers.
struct IndexMaps {
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
};

IndexMaps build_index_maps(int n, std::span<const int> keep) {
    std::vector<bool> is_kept(static_cast<std::size_t>(n) + 1, false);
    for (int q : keep) is_kept[q] = true;
    std::vector<int> traced_qubits;
    for (int q = 1; q <= n; ++q) {
        if (!is_kept[q]) traced_qubits.push_back(q);
    }

    auto scatter = [n](std::span<const int> qubits) {
        const std::size_t k = qubits.size();
        std::vector<std::size_t> offsets(std::size_t{1} << k);
        for (std::size_t local = 0; local < offsets.size(); ++local) {
            std::size_t full = 0;
            for (std::size_t j = 0; j < k; ++j) {
                // local bit (k-1-j) belongs to qubits[j]
                if ((local >> (k - 1 - j)) & 1u) full |= std::size_t{1} << qubit_bit(n, qubits[j]);
            }
            offsets[local] = full;
        }
        return offsets;
    };
    return {scatter(keep), scatter(traced_qubits)};
}

}  // namespace

PureState::PureState(std::vector<Complex> amps) : n_(qubits_for_dim(amps.size(), "PureState")), amps_(std::move(amps)) {
    const double norm2 = norm_squared(amps_);
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kNormalizationTol) {
        std::ostringstream os;
        os.precision(17);
        os << "PureState: amplitudes violate normalization (sum |a|^2 = " << norm2 << ")";
        throw ValidationError(os.str());
    }
}

PureState PureState::normalized(std::vector<Complex> amps) {
    const int n = qubits_for_dim(amps.size(), "PureState");
    const double norm = std::sqrt(norm_squared(amps));
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("PureState: cannot normalize a zero vector");
    for (auto& z : amps) z /= norm;
    return PureState(std::move(amps), n, Trusted{});
}

PureState PureState::basis(int n, std::size_t index) {
    if (n < 1 || n > kMaxQubits) throw CapacityError("PureState::basis: qubit count out of range 1..12");
    std::vector<Complex> amps(std::size_t{1} << n);
    if (index >= amps.size()) throw ArgumentError("PureState::basis: index out of range");
    amps[index] = 1.0;
    return PureState(std::move(amps), n, Trusted{});
}

DensityMatrix::DensityMatrix(CMatrix entries) {
    if (!entries.square()) throw ValidationError("DensityMatrix: matrix is not square");
    n_ = qubits_for_dim(entries.rows(), "DensityMatrix");
    const double herm = entries.hermiticity_error();
    if (herm > kHermiticityTol) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian (max |M - M^dagger| = " << herm << ")";
        throw ValidationError(os.str());
    }
    const Complex tr = entries.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os.precision(17);
        os << "DensityMatrix: trace " << tr.real() << " differs from 1";
        throw ValidationError(os.str());
    }
    const auto spectrum = eig_hermitian(entries, false);
    if (spectrum.eigenvalues.front() < -kPsdSlack) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << spectrum.eigenvalues.front();
        throw ValidationError(os.str());
    }
    m_ = std::move(entries);
}

DensityMatrix DensityMatrix::unchecked(CMatrix entries) {
    if (!entries.square()) throw ArgumentError("DensityMatrix: matrix is not square");
    const int n = qubits_for_dim(entries.rows(), "DensityMatrix");
    return DensityMatrix(std::move(entries), n, Trusted{});
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(CMatrix::outer(psi.amplitudes()), psi.num_qubits(), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    if (n < 1 || n > kMaxQubits) throw CapacityError("DensityMatrix: qubit count out of range 1..12");
    const std::size_t d = std::size_t{1} << n;
    CMatrix m = CMatrix::identity(d);
    m *= 1.0 / static_cast<double>(d);
    return DensityMatrix(std::move(m), n, Trusted{});
}

int num_qubits(const State& s) {
    return std::visit([](const auto& x) { return x.num_qubits(); }, s);
}

DensityMatrix to_density(const State& s) {
    if (const auto* psi = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*psi);
    return std::get<DensityMatrix>(s);
}

PureState tensor_product(const PureState& a, const PureState& b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw CapacityError("tensor_product: result exceeds the 12-qubit capacity");
    }
    return PureState::normalized(kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw CapacityError("tensor_product: result exceeds the 12-qubit capacity");
    }
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    const int n = rho.num_qubits();
    check_keep(n, keep);
    const auto maps = build_index_maps(n, keep);
    const std::size_t dk = maps.kept.size();
    CMatrix out(dk, dk);
    const CMatrix& m = rho.matrix();
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            Complex acc = 0.0;
            for (std::size_t t : maps.traced) acc += m(maps.kept[r] | t, maps.kept[c] | t);
            out(r, c) = acc;
        }
    }
    return DensityMatrix::unchecked(std::move(out));
}

DensityMatrix reduced_state(const PureState& psi, std::span<const int> keep) {
    const int n = psi.num_qubits();
    check_keep(n, keep);
    const auto maps = build_index_maps(n, keep);
    const std::size_t dk = maps.kept.size();
    CMatrix out(dk, dk);
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = r; c < dk; ++c) {
            Complex acc = 0.0;
            for (std::size_t t : maps.traced) acc += psi[maps.kept[r] | t] * std::conj(psi[maps.kept[c] | t]);
            out(r, c) = acc;
            out(c, r) = std::conj(acc);
        }
        out(r, r) = out(r, r).real();
    }
    return DensityMatrix::unchecked(std::move(out));
}

CMatrix single_qubit_marginal(const PureState& psi, int q) {
    const int n = psi.num_qubits();
    if (q < 1 || q > n) {
        std::ostringstream os;
        os << "qubit index " << q << " out of range 1.." << n;
        throw ArgumentError(os.str());
    }
    const std::size_t mask = std::size_t{1} << qubit_bit(n, q);
    double p0 = 0.0;
    double p1 = 0.0;
    Complex coherence = 0.0;
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        if (k & mask) {
            p1 += std::norm(psi[k]);
        } else {
            p0 += std::norm(psi[k]);
            coherence += psi[k] * std::conj(psi[k | mask]);
        }
    }
    CMatrix m(2, 2);
    m(0, 0) = p0;
    m(1, 1) = p1;
    m(0, 1) = coherence;
    m(1, 0) = std::conj(coherence);
    return m;
}

CMatrix single_qubit_marginal(const DensityMatrix& rho, int q) {
    const int n = rho.num_qubits();
    if (q < 1 || q > n) {
        std::ostringstream os;
        os << "qubit index " << q << " out of range 1.." << n;
        throw ArgumentError(os.str());
    }
    const std::size_t mask = std::size_t{1} << qubit_bit(n, q);
    double p0 = 0.0;
    double p1 = 0.0;
    Complex coherence = 0.0;
    for (std::size_t k = 0; k < rho.dim(); ++k) {
        if (k & mask) {
            p1 += rho(k, k).real();
        } else {
            p0 += rho(k, k).real();
            coherence += rho(k, k | mask);
        }
    }
    CMatrix m(2, 2);
    m(0, 0) = p0;
    m(1, 1) = p1;
    m(0, 1) = coherence;
    m(1, 0) = std::conj(coherence);
    return m;
}

std::pair<double, double> eigenvalues_2x2(const CMatrix& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_trace = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {half_trace - radius, half_trace + radius};
}

double entropy_bits(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kPsdSlack) {
            std::ostringstream os;
            os << "von_neumann_entropy: eigenvalue " << lambda << " below -1e-10";
            throw ValidationError(os.str());
        }
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    if (rho.dim() == 2) {
        const auto [lo, hi] = eigenvalues_2x2(rho.matrix());
        const double pair[2] = {lo, hi};
        return entropy_bits(pair);
    }
    const auto spectrum = eig_hermitian(rho.matrix(), false);
    return entropy_bits(spectrum.eigenvalues);
}

}  // namespace empskit
