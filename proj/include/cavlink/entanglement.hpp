// entanglement.hpp: Wootters concurrence and entanglement of formation for two
// qubits, plus the E(tau) trace and tau* extraction for the |gg> dynamics.

#pragma once

#include <cstddef>
#include <vector>

#include "cavlink/numerics.hpp"
#include "cavlink/spin_dynamics.hpp"

namespace cavlink {

// Hermitian, unit-trace, positive-semidefinite 4x4 matrix in basis order.
class DensityMatrix {
public:
    // Throws InvalidDensityMatrix when any of the invariants fails by more than 1e-10.
    explicit DensityMatrix(const CMatrix4& rho);

    static DensityMatrix from_pure(const TwoQubitPureState& psi);

    const CMatrix4& matrix() const noexcept { return rho_; }

private:
    CMatrix4 rho_;
};

// 2 |c_ee c_gg - c_eg c_ge|
double concurrence_pure(const TwoQubitPureState& psi);

// max(0, l1 - l2 - l3 - l4), l_i the singular values of W^T (sy x sy) W where
// rho = W W^dagger; these equal the square roots of the eigenvalues of
// rho (sy x sy) rho* (sy x sy).
double concurrence_mixed(const DensityMatrix& rho);

// h((1 + sqrt(1 - c^2)) / 2) with h the binary entropy in bits.
// Throws OutOfRange unless 0 <= c <= 1 (1e-12 slack is clamped).
double eof_from_concurrence(double c);

struct TracePoint {
    double tau;
    double e;
};

struct EntanglementTrace {
    std::vector<TracePoint> points;
    double eta = 0.0;
    double step = 0.0;
};

// Grid size for [0, tau_max] at spacing `step`, both ends included when
// tau_max is a multiple of step. Throws BadGrid.
std::size_t grid_size(double tau_max, double step, double max_step);

// E(tau) on tau_k = k * step, k = 0..floor(tau_max/step). Requires
// 0 < step <= 0.1 and tau_max >= step.
EntanglementTrace entanglement_trace(double eta, double tau_max, double step, unsigned threads = 1);

struct TauStarResult {
    double eta = 0.0;
    double tau_star = 0.0;
    double e_max = 0.0;
    double window = 0.0;
    double step = 0.0;
    double tolerance = 0.0;
};

struct TauStarOptions {
    double window = 1e4;
    double step = 1e-2;
    double tolerance = 1e-2;
};

// Smallest grid tau with E(tau) >= e_max - tolerance, e_max the grid maximum.
TauStarResult tau_star(double eta, const TauStarOptions& opts = {}, unsigned threads = 1);

}  // namespace cavlink
