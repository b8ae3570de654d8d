#include "cavlink/feasibility.hpp"

#include <cmath>
#include <numbers>

#include "cavlink/error.hpp"

namespace cavlink {

ChiEstimate chi_from_raman(const RamanParams& p) {
    if (p.delta_a == 0.0) throw Error(Errc::ZeroDetuning, "atomic detuning delta_a must be nonzero");
    const double chi = p.g * p.omega / p.delta_a;
    if (!std::isfinite(chi)) throw Error(Errc::InvalidParameter, "Raman parameters must be finite");
    return {std::abs(chi), chi > 0.0 ? 1 : (chi < 0.0 ? -1 : 0)};
}

double j_estimate(double chi, double nbar, double gamma) {
    if (!(gamma > 0.0)) throw Error(Errc::NonpositiveGamma, "cavity decay gamma must be > 0");
    if (!(nbar >= 0.0)) throw Error(Errc::InvalidParameter, "photon number must be >= 0");
    return chi * chi * nbar / (2.0 * gamma);
}

double gamma_f_from_db(const FiberLossSpec& spec) {
    if (!(spec.db_per_km >= 0.0) || !(spec.length_km >= 0.0) || !std::isfinite(spec.db_per_km) ||
        !std::isfinite(spec.length_km)) {
        throw Error(Errc::InvalidParameter, "fiber attenuation and length must be finite and >= 0");
    }
    const double power = spec.db_per_km * spec.length_km * std::numbers::ln10 / 10.0;
    return spec.convention == LossConvention::PowerExponent ? power : 0.5 * power;
}

LossyCouplingReport lossy_coupling_report(double j, double gamma_f) {
    if (!(gamma_f >= 0.0)) throw Error(Errc::NegativeLoss, "fiber loss exponent must be >= 0");
    return {j * std::exp(-gamma_f), j * std::exp(-2.0 * gamma_f)};
}

}  // namespace cavlink
