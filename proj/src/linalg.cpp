#include "empskit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "empskit/error.hpp"

namespace empskit {

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ArgumentError("CMatrix: data length does not match rows*cols");
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

CMatrix CMatrix::outer(std::span<const Complex> ket) {
    const std::size_t d = ket.size();
    CMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) m(r, c) = ket[r] * std::conj(ket[c]);
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

Complex CMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::hermiticity_error() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ArgumentError("CMatrix: shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ArgumentError("CMatrix: shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("CMatrix: shape mismatch in *");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

std::vector<Complex> multiply(const CMatrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) throw ArgumentError("multiply: shape mismatch");
    std::vector<Complex> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back(x * y);
    }
    return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw ArgumentError("inner: length mismatch");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

Complex expectation(const CMatrix& m, std::span<const Complex> v) {
    const auto mv = multiply(m, v);
    return inner(v, mv);
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p) {
        for (std::size_t q = 0; q < a.cols(); ++q) {
            if (p != q) s += std::norm(a(p, q));
        }
    }
    return std::sqrt(s);
}

// Annihilates a(p,q) with U = diag(1, e^{-i phi}) * [[c, s], [-s, c]], A <- U^dagger A U.
void rotate(CMatrix& a, std::optional<CMatrix>& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex phase = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * r);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * r;
    a(q, q) = aqq + t * r;

    if (v) {
        CMatrix& vm = *v;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vm(k, p);
            const Complex vkq = vm(k, q);
            vm(k, p) = vkp * u_pp + vkq * u_qp;
            vm(k, q) = vkp * u_pq + vkq * u_qq;
        }
    }
}

}  // namespace

Spectrum eig_hermitian(const CMatrix& m, bool want_vectors) {
    if (!m.square()) throw ArgumentError("eig_hermitian: matrix is not square");
    const double scale = std::max(1.0, m.max_abs());
    const double herm = m.hermiticity_error();
    if (herm > 1e-12 * scale) {
        std::ostringstream os;
        os << "eig_hermitian: matrix is not Hermitian (max |M - M^dagger| = " << herm << ")";
        throw ValidationError(os.str());
    }

    const std::size_t n = m.rows();
    // Symmetrize so rounding in the input cannot leak into the sweeps.
    CMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const Complex z = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a(r, c) = z;
            a(c, r) = std::conj(z);
        }
    }
    std::optional<CMatrix> v;
    if (want_vectors) v = CMatrix::identity(n);

    constexpr int kMaxSweeps = 100;
    const double tol = 1e-12 * std::max(1.0, a.frobenius_norm());
    double off = off_diagonal_norm(a);
    int sweep = 0;
    while (off > tol) {
        if (sweep == kMaxSweeps) {
            std::ostringstream os;
            os << "eig_hermitian: no convergence after " << kMaxSweeps
               << " sweeps (off-diagonal norm " << off << ")";
            throw NumericError(os.str());
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
        }
        off = off_diagonal_norm(a);
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.eigenvalues.reserve(n);
    for (auto i : order) out.eigenvalues.push_back(a(i, i).real());
    if (v) {
        CMatrix sorted(n, n);
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t r = 0; r < n; ++r) sorted(r, col) = (*v)(r, order[col]);
        }
        out.eigenvectors = std::move(sorted);
    }
    return out;
}

}  // namespace empskit
