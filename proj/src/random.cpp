#include "empskit/random.hpp"

#include <cmath>

#include "empskit/error.hpp"

namespace empskit {

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

PureState random_pure_state(int n, Rng& rng) {
    if (n < 1 || n > kMaxQubits) throw CapacityError("random_pure_state: qubit count out of range 1..12");
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& z : amps) z = rng.complex_normal();
    return PureState::normalized(std::move(amps));
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
    CMatrix u(dim, dim);
    for (auto& z : u.data()) z = rng.complex_normal();
    // Modified Gram-Schmidt over columns.
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            Complex proj = 0.0;
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(u(r, prev)) * u(r, c);
            for (std::size_t r = 0; r < dim; ++r) u(r, c) -= proj * u(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) norm += std::norm(u(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < dim; ++r) u(r, c) /= norm;
    }
    return u;
}

DensityMatrix random_density_matrix(int n, Rng& rng) {
    if (n < 1 || n > kMaxQubits) throw CapacityError("random_density_matrix: qubit count out of range 1..12");
    const std::size_t d = std::size_t{1} << n;
    CMatrix g(d, d);
    for (auto& z : g.data()) z = rng.complex_normal();
    CMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    for (std::size_t r = 0; r < d; ++r) {
        rho(r, r) = rho(r, r).real();
        for (std::size_t c = r + 1; c < d; ++c) rho(c, r) = std::conj(rho(r, c));
    }
    return DensityMatrix::unchecked(std::move(rho));
}

CMatrix random_hermitian(std::size_t dim, Rng& rng) {
    CMatrix g(dim, dim);
    for (auto& z : g.data()) z = rng.complex_normal();
    CMatrix h = g + g.adjoint();
    h *= 0.5;
    for (std::size_t r = 0; r < dim; ++r) h(r, r) = h(r, r).real();
    return h;
}

}  // namespace empskit
