#include "cavlink/cavity_network.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavlink/error.hpp"

namespace cavlink {
namespace {

using XCx = std::complex<long double>;

bool finite(Cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::initializer_list<Cx> values, const char* where) {
    for (Cx z : values)
        if (!finite(z)) throw Error(Errc::NonFinite, std::string(where) + ": result is not finite");
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

std::string_view to_string(RateUnit unit) noexcept {
    switch (unit) {
        case RateUnit::Dimensionless: return "dimensionless";
        case RateUnit::AngularMHz: return "2pi*MHz";
    }
    return "unknown";
}

double wrap_phase(double phi) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

NetworkParams NetworkParams::validated() const {
    for (double x : {gamma, delta, chi, drive.real(), drive.imag(), phi12, phi21, gamma_f}) {
        if (!std::isfinite(x)) throw Error(Errc::InvalidParameter, "network parameters must be finite");
    }
    if (!(gamma > 0.0)) throw Error(Errc::InvalidParameter, "gamma must be > 0");
    if (gamma_f < 0.0) throw Error(Errc::NegativeLoss, "gamma_f must be >= 0");
    NetworkParams out = *this;
    out.phi12 = wrap_phase(phi12);
    out.phi21 = wrap_phase(phi21);
    return out;
}

Cx NetworkParams::fiber12() const { return std::exp(Cx(-gamma_f, phi12)); }
Cx NetworkParams::fiber21() const { return std::exp(Cx(-gamma_f, phi21)); }

Cx denominator(const NetworkParams& p) {
    const Cx g(p.gamma, p.delta);
    return g * g - p.gamma * p.gamma * std::exp(Cx(-2.0 * p.gamma_f, p.phi12 + p.phi21));
}

CMatrix2 steady_matrix(const NetworkParams& p) {
    const Cx g(p.gamma, p.delta);
    CMatrix2 m;
    m(0, 0) = g;
    m(0, 1) = -p.gamma * p.fiber12();
    m(1, 0) = -p.gamma * p.fiber21();
    m(1, 1) = g;
    return m;
}

SteadyFields steady_fields(const NetworkParams& params) {
    const NetworkParams p = params.validated();
    const Cx d = denominator(p);
    const double scale = p.gamma * p.gamma + p.delta * p.delta;
    if (!(std::abs(d) > kRecyclingSingular * scale)) {
        throw Error(Errc::ResonantRecycling,
                    "steady-state denominator (gamma+i*delta)^2 - gamma^2*exp(i(phi12+phi21)) is singular "
                    "(|D| = " + fmt(std::abs(d)) + "); the recycled intracavity field diverges");
    }
    const Cx g(p.gamma, p.delta);
    SteadyFields s;
    s.alpha = p.drive * g / d;
    s.beta = p.gamma * s.alpha * p.fiber21() / g;
    require_finite({s.alpha, s.beta}, "steady_fields");
    return s;
}

std::vector<RegimeDiagnostic> validate_regime(const NetworkParams& p, const SteadyFields& s) {
    std::vector<RegimeDiagnostic> out;
    const double chi = std::abs(p.chi);
    if (chi == 0.0) return out;
    const double ratio = p.gamma / chi;
    if (ratio <= 5.0) {
        out.push_back({"gamma_over_chi_small", "γ/χ not ≫ 1 (γ/χ = " + fmt(ratio) + " <= 5)"});
    }
    const double amp = std::abs(s.alpha);
    if (amp <= 2.0 * ratio) {
        out.push_back({"alpha_not_large", "|α| not ≫ γ/χ (|α| = " + fmt(amp) + " <= 2γ/χ = " + fmt(2.0 * ratio) + ")"});
    }
    if (p.gamma <= chi) {
        out.push_back({"gamma_not_above_chi", "γ not > χ (γ = " + fmt(p.gamma) + ", χ = " + fmt(chi) + ")"});
    }
    return out;
}

FluctuationCoefficients fluctuation_coefficients(const NetworkParams& params, const SteadyFields& s) {
    const NetworkParams p = params.validated();
    // Fails the same way steady_fields does near the recycling singularity.
    (void)steady_fields(p);
    const CMatrix2 m = steady_matrix(p);
    const Cx src_a = -kI * p.chi * s.alpha;
    const Cx src_b = -kI * p.chi * s.beta;
    const CVector2 from1 = solve2(m, {src_a, 0.0});
    const CVector2 from2 = solve2(m, {0.0, src_b});
    FluctuationCoefficients c{from1[0], from2[0], from1[1], from2[1]};
    require_finite({c.c_a1, c.c_a2, c.c_b1, c.c_b2}, "fluctuation_coefficients");
    return c;
}

FluctuationCoefficients fluctuation_coefficients_closed(const NetworkParams& params, const SteadyFields& s) {
    const NetworkParams p = params.validated();
    (void)steady_fields(p);
    const Cx d = denominator(p);
    const Cx g(p.gamma, p.delta);
    const Cx k = -kI * p.chi;
    FluctuationCoefficients c;
    c.c_a1 = k * s.alpha * g / d;
    c.c_a2 = k * s.beta * p.gamma * p.fiber12() / d;
    c.c_b1 = k * s.alpha * p.gamma * p.fiber21() / d;
    c.c_b2 = k * s.beta * g / d;
    return c;
}

ThetaPair theta_variants(const NetworkParams& params, const SteadyFields& s) {
    const NetworkParams p = params.validated();
    const Cx d = denominator(p);
    if (s.alpha == 0.0 && s.beta == 0.0) return {};
    return {(std::conj(s.alpha) * s.beta * p.fiber12() / d).imag(),
            (s.alpha * std::conj(s.beta) * p.fiber21() / d).imag()};
}

CouplingResult coupling(const NetworkParams& params) {
    const NetworkParams p = params.validated();
    const SteadyFields s = steady_fields(p);
    const CMatrix2 m = steady_matrix(p);

    // Dispersive energy E(z1, z2) = 2 chi Re(alpha* a) z1 + 2 chi Re(beta* b) z2,
    // with (a, b) the fluctuation response to the spin configuration (z1, z2).
    // H_eff = 2 J s1 s2, so J = sum_z z1 z2 E(z) / 8. Since z^2 = 1 this sum is
    // 2 chi Re(alpha* sum_z z2 a(z)) + 2 chi Re(beta* sum_z z1 b(z)). J can be
    // many orders below the local terms, so the four solves run in extended
    // precision on the same (double) system.
    const XCx m00(m(0, 0)), m01(m(0, 1)), m10(m(1, 0)), m11(m(1, 1));
    const XCx det = m00 * m11 - m01 * m10;
    const XCx alpha(s.alpha), beta(s.beta), chi_i(0.0L, static_cast<long double>(p.chi));
    XCx a_cross{}, b_cross{};
    for (const long double z1 : {1.0L, -1.0L}) {
        for (const long double z2 : {1.0L, -1.0L}) {
            const XCx src_a = -chi_i * alpha * z1, src_b = -chi_i * beta * z2;
            a_cross += z2 * ((m11 * src_a - m01 * src_b) / det);
            b_cross += z1 * ((m00 * src_b - m10 * src_a) / det);
        }
    }
    const long double cross = (std::conj(alpha) * a_cross).real() + (std::conj(beta) * b_cross).real();

    CouplingResult r;
    r.j_oracle = static_cast<double>(static_cast<long double>(p.chi) * cross / 4.0L);
    const ThetaPair th = theta_variants(p, s);
    r.theta1 = th.theta1;
    r.theta2 = th.theta2;
    const double pref = p.gamma * p.chi * p.chi;
    r.j_closed = pref * (th.theta1 + th.theta2);
    r.j_paper = pref * th.theta1;
    r.local1 = p.chi * std::norm(s.alpha);
    r.local2 = p.chi * std::norm(s.beta);
    for (double x : {r.j_oracle, r.theta1, r.theta2, r.j_closed, r.j_paper, r.local1, r.local2}) {
        if (!std::isfinite(x)) throw Error(Errc::NonFinite, "coupling: result is not finite");
    }
    return r;
}

NetworkParams apply_fiber_loss(const NetworkParams& p, double gamma_f) {
    if (!(gamma_f >= 0.0)) throw Error(Errc::NegativeLoss, "fiber loss exponent must be >= 0");
    NetworkParams out = p;
    out.gamma_f = gamma_f;
    return out;
}

double coupling_largedelta_lossy(double j_lossless, double gamma_f) {
    if (!(gamma_f >= 0.0)) throw Error(Errc::NegativeLoss, "fiber loss exponent must be >= 0");
    return j_lossless * std::exp(-2.0 * gamma_f);
}

}  // namespace cavlink
