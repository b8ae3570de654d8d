// cavity_network.hpp: the driven, fiber-linked cavity pair.
//
// Cavity 1 is driven with amplitude `drive`; the output of each cavity feeds the
// other through a fiber that adds a phase (phi12: 2 -> 1 leg into cavity 1,
// phi21: 1 -> 2 leg into cavity 2) and a per-traversal loss exponent gamma_f.
// Every fiber factor e^{i phi} below is really e^{i phi - gamma_f}.
//
// The library is unit-agnostic: gamma, delta, chi and drive share one rate unit,
// carried along as a tag.

#pragma once

#include <string>
#include <vector>

#include "cavlink/numerics.hpp"

namespace cavlink {

enum class RateUnit {
    Dimensionless,
    AngularMHz,  // 2*pi*MHz, i.e. rad/us
};

std::string_view to_string(RateUnit unit) noexcept;

struct NetworkParams {
    double gamma = 1.0;  // cavity decay rate
    double delta = 0.0;  // cavity detuning
    double chi = 0.0;    // dispersive coupling g^2 / Delta_atom
    Cx drive = 0.0;      // driving amplitude on cavity 1
    double phi12 = 0.0;  // fiber phase, radians
    double phi21 = 0.0;
    double gamma_f = 0.0;  // fiber loss exponent, >= 0
    RateUnit unit = RateUnit::Dimensionless;

    // Copy with phases reduced to [0, 2pi). Throws InvalidParameter on
    // non-finite fields or gamma <= 0, NegativeLoss on gamma_f < 0.
    NetworkParams validated() const;

    // e^{i phi12 - gamma_f}, e^{i phi21 - gamma_f}
    Cx fiber12() const;
    Cx fiber21() const;
};

// Reduces an angle to [0, 2pi).
double wrap_phase(double phi) noexcept;

struct SteadyFields {
    Cx alpha = 0.0;
    Cx beta = 0.0;
};

// Steady fluctuation response: a = c_a1 s1 + c_a2 s2, b = c_b1 s1 + c_b2 s2,
// with s1, s2 the sigma_z eigenvalues of the two atoms.
struct FluctuationCoefficients {
    Cx c_a1 = 0.0;
    Cx c_a2 = 0.0;
    Cx c_b1 = 0.0;
    Cx c_b2 = 0.0;
};

struct CouplingResult {
    double j_oracle = 0.0;  // from the four-configuration elimination
    double theta1 = 0.0;
    double theta2 = 0.0;
    double j_closed = 0.0;  // gamma chi^2 (theta1 + theta2)
    double j_paper = 0.0;   // gamma chi^2 theta1, the single-Theta form
    double local1 = 0.0;    // chi |alpha|^2
    double local2 = 0.0;    // chi |beta|^2
};

struct RegimeDiagnostic {
    std::string code;
    std::string message;
};

// Relative singularity threshold on |D| / (gamma^2 + delta^2).
inline constexpr double kRecyclingSingular = 1e-9;

// D = (gamma + i delta)^2 - gamma^2 e^{i(phi12 + phi21) - 2 gamma_f}. No validation.
Cx denominator(const NetworkParams& p);

// 2x2 steady-state matrix [[gamma + i delta, -gamma e12], [-gamma e21, gamma + i delta]].
// Its determinant is denominator(p).
CMatrix2 steady_matrix(const NetworkParams& p);

// alpha = drive (gamma + i delta) / D, beta = gamma alpha e21 / (gamma + i delta).
// Throws ResonantRecycling when |D| <= kRecyclingSingular (gamma^2 + delta^2).
SteadyFields steady_fields(const NetworkParams& p);

// Warnings (never errors) for leaving the regime 1 << gamma/chi << |alpha|, gamma > chi.
std::vector<RegimeDiagnostic> validate_regime(const NetworkParams& p, const SteadyFields& s);

// Solves the linearized steady system for unit sigma_z sources with solve2.
FluctuationCoefficients fluctuation_coefficients(const NetworkParams& p, const SteadyFields& s);

// Same coefficients from their closed forms over D.
FluctuationCoefficients fluctuation_coefficients_closed(const NetworkParams& p, const SteadyFields& s);

struct ThetaPair {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

// theta1 = Im{alpha* beta e12 / D}, theta2 = Im{alpha beta* e21 / D}.
ThetaPair theta_variants(const NetworkParams& p, const SteadyFields& s);

// Effective Ising strength by adiabatic elimination. j_oracle does not use the
// theta formulas: it solves the steady fluctuation system for each of the four
// sigma_z configurations and reads off the z1*z2 component of the dispersive energy.
CouplingResult coupling(const NetworkParams& p);

// Throws NegativeLoss for gamma_f < 0.
NetworkParams apply_fiber_loss(const NetworkParams& p, double gamma_f);

// Large-detuning (delta >> gamma) lossy coupling: j e^{-2 gamma_f}.
double coupling_largedelta_lossy(double j_lossless, double gamma_f);

}  // namespace cavlink
