// Shared helpers for the unit tests: seeded generators and comparisons.
#pragma once

#include <random>

#include "cavlink/numerics.hpp"

namespace cavlink::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Cx random_complex(std::mt19937_64& g, double scale = 1.0) {
    return {uniform(g, -scale, scale), uniform(g, -scale, scale)};
}

inline CMatrix4 random_hermitian(std::mt19937_64& g, double scale = 1.0) {
    CMatrix4 m;
    for (std::size_t r = 0; r < 4; ++r) {
        m(r, r) = uniform(g, -scale, scale);
        for (std::size_t c = r + 1; c < 4; ++c) {
            m(r, c) = random_complex(g, scale);
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

inline CVector4 random_unit4(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    CVector4 v;
    for (auto& z : v) z = Cx(n(g), n(g));
    const double s = norm(v);
    for (auto& z : v) z /= s;
    return v;
}

// Projector onto span of eigenvectors k in [lo, hi).
inline CMatrix4 projector(const HermEig4& e, std::size_t lo, std::size_t hi) {
    CMatrix4 p;
    for (std::size_t k = lo; k < hi; ++k) p = p + outer(e.vector(k), e.vector(k));
    return p;
}

inline double max_abs_diff(const CVector4& a, const CVector4& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace cavlink::test
