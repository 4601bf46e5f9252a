#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace empskit {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Small-system only (dim <= 4096).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    static CMatrix identity(std::size_t dim);
    static CMatrix diagonal(std::span<const double> values);
    static CMatrix outer(std::span<const Complex> ket);  // |v><v|

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    CMatrix adjoint() const;
    Complex trace() const;
    /// max |M - M^dagger| over all entries.
    double hermiticity_error() const;
    double max_abs() const;
    double frobenius_norm() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex scale);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

std::vector<Complex> multiply(const CMatrix& m, std::span<const Complex> v);
CMatrix kron(const CMatrix& a, const CMatrix& b);
std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
/// <v|M|v>
Complex expectation(const CMatrix& m, std::span<const Complex> v);

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted ascending. When requested, `eigenvectors` holds the
/// corresponding orthonormal eigenvectors as columns, so that M = V diag(lambda) V^dagger.
struct Spectrum {
    std::vector<double> eigenvalues;
    std::optional<CMatrix> eigenvectors;
};

/// Cyclic complex Jacobi.
///
/// Sweeps rotate every off-diagonal pair until the off-diagonal Frobenius
/// norm drops below 1e-12 * max(1, ||M||_F) or 100 sweeps have been done.
/// Throws ValidationError when M is not Hermitian (1e-12 relative to max(1, max|M_ij|))
/// and NumericError, reporting the residual, when sweeps run out.
Spectrum eig_hermitian(const CMatrix& m, bool want_vectors = true);

}  // namespace empskit
