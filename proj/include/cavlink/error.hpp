#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cavlink {

enum class Errc {
    SingularSystem,
    NotHermitian,
    NotNormalized,
    ResonantRecycling,
    NegativeLoss,
    DegenerateEta,
    InvalidDensityMatrix,
    OutOfRange,
    BadGrid,
    ZeroDetuning,
    NonpositiveGamma,
    InvalidParameter,
    NonFinite,
};

// Stable snake_case identifier, used in CLI diagnostics.
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace cavlink
