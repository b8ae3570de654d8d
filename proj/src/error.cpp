#include "cavlink/error.hpp"

namespace cavlink {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::SingularSystem: return "singular_system";
        case Errc::NotHermitian: return "not_hermitian";
        case Errc::NotNormalized: return "not_normalized";
        case Errc::ResonantRecycling: return "resonant_recycling";
        case Errc::NegativeLoss: return "negative_loss";
        case Errc::DegenerateEta: return "degenerate_eta";
        case Errc::InvalidDensityMatrix: return "invalid_density_matrix";
        case Errc::OutOfRange: return "out_of_range";
        case Errc::BadGrid: return "bad_grid";
        case Errc::ZeroDetuning: return "zero_detuning";
        case Errc::NonpositiveGamma: return "nonpositive_gamma";
        case Errc::InvalidParameter: return "invalid_parameter";
        case Errc::NonFinite: return "non_finite";
    }
    return "unknown";
}

}  // namespace cavlink
