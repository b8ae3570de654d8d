// spin_dynamics.hpp: two atoms under H_tot = B(sx1 + sx2) + 2J sz1 sz2.
//
// Basis order is (|ee>, |eg>, |ge>, |gg>), first label atom 1, with
// sigma_z|e> = +|e> and sigma_z|g> = -|g>. hbar = 1 and states evolve as e^{-iEt}.

#pragma once

#include <array>

#include "cavlink/numerics.hpp"

namespace cavlink {

namespace basis {
inline constexpr std::size_t ee = 0;
inline constexpr std::size_t eg = 1;
inline constexpr std::size_t ge = 2;
inline constexpr std::size_t gg = 3;
}  // namespace basis

// Ising strength J, transverse field B and their ratio eta = B/J.
class SpinParams {
public:
    // Throws InvalidParameter for non-finite input or j == 0.
    static SpinParams from_eta(double j, double eta);
    // eta is left at 0 when j == 0.
    static SpinParams from_field(double j, double b);

    double j() const noexcept { return j_; }
    double b() const noexcept { return b_; }
    double eta() const noexcept { return eta_; }

private:
    SpinParams(double j, double b, double eta) : j_(j), b_(b), eta_(eta) {}
    double j_;
    double b_;
    double eta_;
};

// Unit-norm amplitudes in basis order.
class TwoQubitPureState {
public:
    // Throws NotNormalized when |norm - 1| > 1e-10.
    explicit TwoQubitPureState(const CVector4& amplitudes);

    static TwoQubitPureState ground();  // |gg>

    const CVector4& amplitudes() const noexcept { return amp_; }
    Cx operator[](std::size_t i) const { return amp_[i]; }

private:
    CVector4 amp_;
};

struct AnalyticEigensystem {
    std::array<TwoQubitPureState, 4> states;
    std::array<double, 4> energies{};
};

CMatrix4 build_hamiltonian(const SpinParams& sp);

// psi_1..psi_4 with their closed-form normalizations, energies J*(-2s, -2, 2, 2s),
// s = sqrt(1 + eta^2). Throws DegenerateEta when eta == 0.
AnalyticEigensystem analytic_eigensystem(const SpinParams& sp);

// Expansion coefficients of |gg> over psi_1..psi_4; c[1] is exactly 0.
// Throws DegenerateEta unless eta > 0.
std::array<double, 4> initial_coefficients(double eta);

// Closed-form |Psi(tau)> from |gg>, with tau = J t. Precomputes the eigenbasis
// once so that sampling many tau values is cheap.
class AnalyticEvolution {
public:
    explicit AnalyticEvolution(double eta);

    double eta() const noexcept { return eta_; }
    TwoQubitPureState state_at(double tau) const;

private:
    double eta_;
    double root_;  // sqrt(1 + eta^2)
    std::array<CVector4, 4> psi_;
    std::array<double, 4> coeff_;
};

TwoQubitPureState evolve_analytic(double eta, double tau);

inline double scaled_time(double t, double j) noexcept { return j * t; }

}  // namespace cavlink
