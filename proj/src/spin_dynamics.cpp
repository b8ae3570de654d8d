#include "cavlink/spin_dynamics.hpp"

#include <cmath>

#include "cavlink/error.hpp"

namespace cavlink {
namespace {

constexpr double kNormTol = 1e-10;

void require_eta(double eta, bool positive) {
    if (!std::isfinite(eta)) throw Error(Errc::InvalidParameter, "eta must be finite");
    if (positive ? !(eta > 0.0) : eta == 0.0) {
        throw Error(Errc::DegenerateEta, positive ? "eta must be > 0" : "eta must be nonzero");
    }
}

// s = sqrt(1 + eta^2) and s - 1 = eta^2 / (s + 1), the latter without cancellation.
struct Radicals {
    double s;
    double s_minus_1;
};

Radicals radicals(double eta) {
    const double s = std::sqrt(1.0 + eta * eta);
    return {s, eta * eta / (s + 1.0)};
}

// a (|gg> + |ee>) + b (|eg> + |ge>)
CVector4 symmetric_pair(double a, double b) {
    CVector4 v{};
    v[basis::ee] = a;
    v[basis::gg] = a;
    v[basis::eg] = b;
    v[basis::ge] = b;
    return v;
}

// psi_1..psi_4, depending on eta only.
std::array<CVector4, 4> eigenvectors(double eta) {
    const auto [s, sm1] = radicals(eta);
    // 1 + eta^2 + s = s (s + 1), 1 + eta^2 - s = s (s - 1)
    const double n1 = 2.0 * std::sqrt(s * (s + 1.0));
    const double n4 = 2.0 * std::sqrt(s * sm1);
    const double r2 = 1.0 / std::sqrt(2.0);

    CVector4 psi2{};
    psi2[basis::eg] = r2;
    psi2[basis::ge] = -r2;
    CVector4 psi3{};
    psi3[basis::gg] = r2;
    psi3[basis::ee] = -r2;

    return {symmetric_pair(eta / n1, -(1.0 + s) / n1), psi2, psi3, symmetric_pair(eta / n4, sm1 / n4)};
}

}  // namespace

SpinParams SpinParams::from_eta(double j, double eta) {
    if (!std::isfinite(j) || !std::isfinite(eta)) throw Error(Errc::InvalidParameter, "spin parameters must be finite");
    if (j == 0.0) throw Error(Errc::InvalidParameter, "J must be nonzero when eta is given");
    return SpinParams(j, eta * j, eta);
}

SpinParams SpinParams::from_field(double j, double b) {
    if (!std::isfinite(j) || !std::isfinite(b)) throw Error(Errc::InvalidParameter, "spin parameters must be finite");
    return SpinParams(j, b, j == 0.0 ? 0.0 : b / j);
}

TwoQubitPureState::TwoQubitPureState(const CVector4& amplitudes) : amp_(amplitudes) {
    const double n = norm(amp_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol) {
        throw Error(Errc::NotNormalized, "two-qubit state is not unit norm");
    }
}

TwoQubitPureState TwoQubitPureState::ground() {
    CVector4 v{};
    v[basis::gg] = 1.0;
    return TwoQubitPureState(v);
}

CMatrix4 build_hamiltonian(const SpinParams& sp) {
    CMatrix4 h;
    // 2J sz1 sz2: +1 on |ee>, |gg>, -1 on |eg>, |ge>
    h(basis::ee, basis::ee) = 2.0 * sp.j();
    h(basis::eg, basis::eg) = -2.0 * sp.j();
    h(basis::ge, basis::ge) = -2.0 * sp.j();
    h(basis::gg, basis::gg) = 2.0 * sp.j();
    // B sx1 flips atom 1, B sx2 flips atom 2
    const Cx b = sp.b();
    h(basis::ee, basis::ge) = h(basis::ge, basis::ee) = b;
    h(basis::eg, basis::gg) = h(basis::gg, basis::eg) = b;
    h(basis::ee, basis::eg) = h(basis::eg, basis::ee) = b;
    h(basis::ge, basis::gg) = h(basis::gg, basis::ge) = b;
    return h;
}

AnalyticEigensystem analytic_eigensystem(const SpinParams& sp) {
    require_eta(sp.eta(), false);
    const auto psi = eigenvectors(sp.eta());
    const double s = radicals(sp.eta()).s;
    const double j = sp.j();
    return {{TwoQubitPureState(psi[0]), TwoQubitPureState(psi[1]), TwoQubitPureState(psi[2]),
             TwoQubitPureState(psi[3])},
            {-2.0 * j * s, -2.0 * j, 2.0 * j, 2.0 * j * s}};
}

std::array<double, 4> initial_coefficients(double eta) {
    require_eta(eta, true);
    const auto [s, sm1] = radicals(eta);
    // (1 - s) sqrt(1 + eta^2 + s) = -(s - 1) sqrt(s (s + 1)), and likewise for c4.
    const double c1 = sm1 * std::sqrt(s * (s + 1.0)) / (2.0 * eta * s);
    const double c4 = (1.0 + s) * std::sqrt(s * sm1) / (2.0 * eta * s);
    return {c1, 0.0, 1.0 / std::sqrt(2.0), c4};
}

AnalyticEvolution::AnalyticEvolution(double eta)
    : eta_(eta), root_(0.0), psi_{}, coeff_(initial_coefficients(eta)) {
    root_ = radicals(eta).s;
    psi_ = eigenvectors(eta);
}

TwoQubitPureState AnalyticEvolution::state_at(double tau) const {
    if (!std::isfinite(tau)) throw Error(Errc::InvalidParameter, "tau must be finite");
    // Energies in units of J; c2 = 0 drops psi_2.
    const std::array<double, 4> energy{-2.0 * root_, -2.0, 2.0, 2.0 * root_};
    CVector4 out{};
    for (std::size_t k = 0; k < 4; ++k) {
        if (coeff_[k] == 0.0) continue;
        const Cx w = coeff_[k] * std::polar(1.0, -energy[k] * tau);
        for (std::size_t r = 0; r < 4; ++r) out[r] += w * psi_[k][r];
    }
    return TwoQubitPureState(out);
}

TwoQubitPureState evolve_analytic(double eta, double tau) { return AnalyticEvolution(eta).state_at(tau); }

}  // namespace cavlink
