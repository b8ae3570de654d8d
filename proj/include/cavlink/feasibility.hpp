// feasibility.hpp: experimental estimates: chi from Raman parameters, J from
// the intracavity photon number, and fiber attenuation in dB converted to the
// loss exponent gamma_f. Rates are in 2*pi*MHz.

#pragma once

namespace cavlink {

struct RamanParams {
    double g = 0.0;        // single-photon Rabi frequency
    double omega = 0.0;    // classical Rabi frequency
    double delta_a = 0.0;  // atomic detuning, sign allowed, nonzero
    double gamma = 0.0;    // cavity decay
    double nbar = 0.0;     // mean photon number |alpha|^2
};

struct ChiEstimate {
    double magnitude = 0.0;  // |g omega / delta_a|
    int sign = 0;            // sign of g omega / delta_a (0 when omega or g vanishes)
};

// Throws ZeroDetuning when delta_a == 0.
ChiEstimate chi_from_raman(const RamanParams& p);

// chi^2 nbar / (2 gamma). Throws NonpositiveGamma, InvalidParameter for nbar < 0.
double j_estimate(double chi, double nbar, double gamma);

enum class LossConvention {
    PowerExponent,      // e^{-gamma_f} is the power transmission
    AmplitudeExponent,  // e^{-gamma_f} is the amplitude transmission
};

struct FiberLossSpec {
    double db_per_km = 0.0;
    double length_km = 0.0;
    LossConvention convention;
};

// PowerExponent: db * L * ln(10) / 10; AmplitudeExponent: half of that.
// Throws InvalidParameter for negative or non-finite fields.
double gamma_f_from_db(const FiberLossSpec& spec);

struct LossyCouplingReport {
    double single = 0.0;   // j e^{-gamma_f}
    double squared = 0.0;  // j e^{-2 gamma_f}
};

// Throws NegativeLoss for gamma_f < 0.
LossyCouplingReport lossy_coupling_report(double j, double gamma_f);

}  // namespace cavlink
