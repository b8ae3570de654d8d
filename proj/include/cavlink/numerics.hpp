// numerics.hpp: fixed-size dense complex linear algebra (2x2 solves, 4x4 Hermitian
// eigensystems, propagators). Everything here is a pure function on values.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace cavlink {

using Cx = std::complex<double>;

inline constexpr Cx kI{0.0, 1.0};

template <std::size_t N>
using CVector = std::array<Cx, N>;

using CVector2 = CVector<2>;
using CVector4 = CVector<4>;

// Row-major N x N complex matrix.
template <std::size_t N>
struct CMatrix {
    std::array<Cx, N * N> data{};

    static constexpr std::size_t dim = N;

    Cx& operator()(std::size_t r, std::size_t c) { return data[r * N + c]; }
    const Cx& operator()(std::size_t r, std::size_t c) const { return data[r * N + c]; }

    static CMatrix identity() {
        CMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMatrix diagonal(const std::array<double, N>& d) {
        CMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    CMatrix adjoint() const {
        CMatrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    CMatrix conjugate() const {
        CMatrix m;
        for (std::size_t i = 0; i < N * N; ++i) m.data[i] = std::conj(data[i]);
        return m;
    }

    // max_ij |m_ij|
    double max_abs() const {
        double out = 0.0;
        for (const auto& z : data) out = std::max(out, std::abs(z));
        return out;
    }

    bool all_finite() const {
        for (const auto& z : data)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    Cx trace() const {
        Cx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }
};

using CMatrix2 = CMatrix<2>;
using CMatrix4 = CMatrix<4>;

template <std::size_t N>
CMatrix<N> operator*(const CMatrix<N>& a, const CMatrix<N>& b) {
    CMatrix<N> m;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t k = 0; k < N; ++k) {
            const Cx ark = a(r, k);
            for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

template <std::size_t N>
CVector<N> operator*(const CMatrix<N>& a, const CVector<N>& v) {
    CVector<N> out{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * v[c];
    return out;
}

template <std::size_t N>
CMatrix<N> operator+(CMatrix<N> a, const CMatrix<N>& b) {
    for (std::size_t i = 0; i < N * N; ++i) a.data[i] += b.data[i];
    return a;
}

template <std::size_t N>
CMatrix<N> operator-(CMatrix<N> a, const CMatrix<N>& b) {
    for (std::size_t i = 0; i < N * N; ++i) a.data[i] -= b.data[i];
    return a;
}

template <std::size_t N>
CMatrix<N> operator*(Cx s, CMatrix<N> a) {
    for (auto& z : a.data) z *= s;
    return a;
}

// <u|v>, antilinear in the first argument.
template <std::size_t N>
Cx inner(const CVector<N>& u, const CVector<N>& v) {
    Cx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

template <std::size_t N>
double norm(const CVector<N>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

// |<u|v>|^2 for unit vectors.
template <std::size_t N>
double fidelity(const CVector<N>& u, const CVector<N>& v) {
    return std::norm(inner(u, v));
}

// |u><v|
template <std::size_t N>
CMatrix<N> outer(const CVector<N>& u, const CVector<N>& v) {
    CMatrix<N> m;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = u[r] * std::conj(v[c]);
    return m;
}

// Eigensystem of a 4x4 Hermitian matrix. Column k of `vectors` belongs to values[k].
struct HermEig4 {
    std::array<double, 4> values{};
    CMatrix4 vectors;

    CVector4 vector(std::size_t k) const {
        CVector4 v;
        for (std::size_t r = 0; r < 4; ++r) v[r] = vectors(r, k);
        return v;
    }
};

// Relative determinant threshold used by solve2.
inline constexpr double kSolve2Singular = 1e-12;

// Solves m x = rhs by Cramer's rule. Throws Error{SingularSystem} when
// |det m| <= kSolve2Singular * max|m_ij|^2.
CVector2 solve2(const CMatrix2& m, const CVector2& rhs);

// ||h - h^dagger||_max relative to ||h||_max; zero for the zero matrix.
double hermiticity_defect(const CMatrix4& h);

// Cyclic complex Jacobi eigensolver. Eigenvalues are returned ascending.
// Throws Error{NotHermitian} when hermiticity_defect(h) > 1e-10.
HermEig4 eig_hermitian4(const CMatrix4& h);

// exp(-i h t) psi0 through the eigendecomposition of h.
// Throws Error{NotHermitian} or Error{NotNormalized} (|‖psi0‖ - 1| > 1e-10).
CVector4 propagate(const CMatrix4& h, double t, const CVector4& psi0);

// Singular values of a general 4x4 complex matrix, descending, by one-sided
// (Hestenes) Jacobi. Small singular values keep absolute accuracy ~eps*‖a‖,
// which eigenvalues of a a^dagger followed by a square root would not.
std::array<double, 4> singular_values4(const CMatrix4& a);

}  // namespace cavlink
