#pragma once

#include <cstdint>
#include <random>

#include "empskit/linalg.hpp"
#include "empskit/qcore.hpp"

namespace empskit {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Seedable source of standard complex Gaussians. Deterministic for a given seed
/// within one build of the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    /// Real and imaginary parts i.i.d. N(0, 1/2), so E|z|^2 = 1.
    Complex complex_normal();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
PureState random_pure_state(int n, Rng& rng);
/// Haar-random unitary from Gram-Schmidt on a complex Ginibre matrix.
CMatrix random_unitary(std::size_t dim, Rng& rng);
/// Induced-measure density matrix G G^dagger / Tr(G G^dagger).
DensityMatrix random_density_matrix(int n, Rng& rng);
/// Hermitian (G + G^dagger) / 2 with complex Gaussian G.
CMatrix random_hermitian(std::size_t dim, Rng& rng);

}  // namespace empskit
