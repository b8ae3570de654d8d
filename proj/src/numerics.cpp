#include "cavlink/numerics.hpp"

#include <limits>
#include <numeric>

#include "cavlink/error.hpp"

namespace cavlink {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kNormTol = 1e-10;
constexpr int kMaxSweeps = 100;

void require_finite(const CMatrix4& h, const char* what) {
    if (!h.all_finite()) throw Error(Errc::NonFinite, std::string(what) + ": non-finite matrix entry");
}

}  // namespace

CVector2 solve2(const CMatrix2& m, const CVector2& rhs) {
    const Cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double scale = m.max_abs();
    if (!(std::abs(det) > kSolve2Singular * scale * scale)) {
        throw Error(Errc::SingularSystem, "solve2: |det| below relative threshold");
    }
    return {(m(1, 1) * rhs[0] - m(0, 1) * rhs[1]) / det,
            (m(0, 0) * rhs[1] - m(1, 0) * rhs[0]) / det};
}

double hermiticity_defect(const CMatrix4& h) {
    const double scale = h.max_abs();
    if (scale == 0.0) return 0.0;
    return (h - h.adjoint()).max_abs() / scale;
}

HermEig4 eig_hermitian4(const CMatrix4& h) {
    require_finite(h, "eig_hermitian4");
    if (hermiticity_defect(h) > kHermitianTol) {
        throw Error(Errc::NotHermitian, "eig_hermitian4: input is not Hermitian");
    }

    CMatrix4 a = Cx(0.5) * (h + h.adjoint());
    CMatrix4 v = CMatrix4::identity();

    double frob = 0.0;
    for (const auto& z : a.data) frob += std::norm(z);
    frob = std::sqrt(frob);

    for (int sweep = 0; sweep < kMaxSweeps && frob > 0.0; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t q = p + 1; q < 4; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-18 * frob) break;

        for (std::size_t p = 0; p < 4; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const Cx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= std::numeric_limits<double>::min()) continue;

                // R = diag(1, e^{-i arg apq}) * [[c, s], [-s, c]] in the (p, q) plane.
                const Cx phase = std::conj(apq) / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Cx rqp = -s * phase;
                const Cx rqq = c * phase;

                for (std::size_t k = 0; k < 4; ++k) {
                    const Cx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * rqp;
                    a(k, q) = akp * s + akq * rqq;
                    const Cx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * rqp;
                    v(k, q) = vkp * s + vkq * rqq;
                }
                for (std::size_t k = 0; k < 4; ++k) {
                    const Cx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(rqp) * aqk;
                    a(q, k) = s * apk + std::conj(rqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, 4> order{};
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermEig4 out;
    for (std::size_t k = 0; k < 4; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < 4; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

CVector4 propagate(const CMatrix4& h, double t, const CVector4& psi0) {
    if (std::abs(norm(psi0) - 1.0) > kNormTol) {
        throw Error(Errc::NotNormalized, "propagate: initial state is not unit norm");
    }
    if (!std::isfinite(t)) throw Error(Errc::NonFinite, "propagate: non-finite time");
    const HermEig4 eig = eig_hermitian4(h);

    // V diag(e^{-i lambda t}) V^dagger psi0
    CVector4 coeff = eig.vectors.adjoint() * psi0;
    for (std::size_t k = 0; k < 4; ++k) coeff[k] *= std::polar(1.0, -eig.values[k] * t);
    return eig.vectors * coeff;
}

std::array<double, 4> singular_values4(const CMatrix4& m) {
    require_finite(m, "singular_values4");
    CMatrix4 a = m;
    constexpr double kConv = 1e-15;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < 4; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                double alpha = 0.0, beta = 0.0;
                Cx gamma = 0.0;
                for (std::size_t k = 0; k < 4; ++k) {
                    alpha += std::norm(a(k, p));
                    beta += std::norm(a(k, q));
                    gamma += std::conj(a(k, p)) * a(k, q);
                }
                const double g = std::abs(gamma);
                if (g <= std::numeric_limits<double>::min() || g <= kConv * std::sqrt(alpha * beta)) continue;
                rotated = true;

                // Rephase column q so that <a_p|a_q> is real, then a real Hestenes rotation.
                const Cx phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < 4; ++k) {
                    const Cx ap = a(k, p);
                    const Cx bq = a(k, q) * phase;
                    a(k, p) = c * ap - s * bq;
                    a(k, q) = s * ap + c * bq;
                }
            }
        }
        if (!rotated) break;
    }

    std::array<double, 4> sv{};
    for (std::size_t k = 0; k < 4; ++k) {
        double s = 0.0;
        for (std::size_t r = 0; r < 4; ++r) s += std::norm(a(r, k));
        sv[k] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

}  // namespace cavlink
