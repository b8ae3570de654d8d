#include "cavlink/entanglement.hpp"

#include <cmath>
#include <sstream>

#include "cavlink/error.hpp"
#include "cavlink/parallel.hpp"

namespace cavlink {
namespace {

constexpr double kStateTol = 1e-10;
// Eigenvalues of rho below this are treated as exact zeros before taking square roots.
constexpr double kRankClip = 1e-14;
constexpr double kMaxStep = 0.1;

// sigma_y (x) sigma_y in basis order: |ee> <-> -|gg>, |eg> <-> |ge>.
CMatrix4 spin_flip() {
    CMatrix4 y;
    y(basis::ee, basis::gg) = -1.0;
    y(basis::gg, basis::ee) = -1.0;
    y(basis::eg, basis::ge) = 1.0;
    y(basis::ge, basis::eg) = 1.0;
    return y;
}

double binary_entropy(double x) {
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

std::vector<double> sample_entanglement(double eta, std::size_t n, double step, unsigned threads) {
    const AnalyticEvolution evo(eta);
    std::vector<double> e(n);
    parallel_for(n, threads, [&](std::size_t k) {
        e[k] = eof_from_concurrence(concurrence_pure(evo.state_at(static_cast<double>(k) * step)));
    });
    return e;
}

void require_positive_eta(double eta) {
    if (!std::isfinite(eta)) throw Error(Errc::InvalidParameter, "eta must be finite");
    if (!(eta > 0.0)) throw Error(Errc::DegenerateEta, "eta must be > 0");
}

}  // namespace

DensityMatrix::DensityMatrix(const CMatrix4& rho) : rho_(rho) {
    if (!rho.all_finite()) throw Error(Errc::InvalidDensityMatrix, "density matrix has non-finite entries");
    if ((rho - rho.adjoint()).max_abs() > kStateTol) {
        throw Error(Errc::InvalidDensityMatrix, "density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > kStateTol) {
        throw Error(Errc::InvalidDensityMatrix, "density matrix trace is not 1");
    }
    if (eig_hermitian4(rho).values[0] < -kStateTol) {
        throw Error(Errc::InvalidDensityMatrix, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const TwoQubitPureState& psi) {
    return DensityMatrix(outer(psi.amplitudes(), psi.amplitudes()));
}

double concurrence_pure(const TwoQubitPureState& psi) {
    using namespace basis;
    const double c = 2.0 * std::abs(psi[ee] * psi[gg] - psi[eg] * psi[ge]);
    return std::min(c, 1.0);
}

double concurrence_mixed(const DensityMatrix& rho) {
    const HermEig4 eig = eig_hermitian4(rho.matrix());
    CMatrix4 w;
    for (std::size_t k = 0; k < 4; ++k) {
        const double p = eig.values[k];
        if (p <= kRankClip) continue;
        const double sp = std::sqrt(p);
        for (std::size_t r = 0; r < 4; ++r) w(r, k) = sp * eig.vectors(r, k);
    }
    CMatrix4 wt;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) wt(r, c) = w(c, r);
    const auto sv = singular_values4(wt * spin_flip() * w);
    const double c = sv[0] - sv[1] - sv[2] - sv[3];
    return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
    constexpr double slack = 1e-12;
    if (!(c >= -slack && c <= 1.0 + slack)) throw Error(Errc::OutOfRange, "concurrence must lie in [0, 1]");
    c = std::clamp(c, 0.0, 1.0);
    if (c == 0.0) return 0.0;
    const double x = 0.5 * (1.0 + std::sqrt((1.0 - c) * (1.0 + c)));
    return std::min(binary_entropy(x), 1.0);
}

std::size_t grid_size(double tau_max, double step, double max_step) {
    if (!std::isfinite(step) || !std::isfinite(tau_max) || !(step > 0.0) || step > max_step) {
        std::ostringstream msg;
        msg << "step must satisfy 0 < step <= " << max_step;
        throw Error(Errc::BadGrid, msg.str());
    }
    if (!(tau_max >= step)) throw Error(Errc::BadGrid, "grid length must be >= step");
    const double count = std::floor(tau_max / step + 1e-9);
    if (count > 1e9) throw Error(Errc::BadGrid, "grid has too many points");
    return static_cast<std::size_t>(count) + 1;
}

EntanglementTrace entanglement_trace(double eta, double tau_max, double step, unsigned threads) {
    require_positive_eta(eta);
    const std::size_t n = grid_size(tau_max, step, kMaxStep);
    const auto e = sample_entanglement(eta, n, step, threads);
    EntanglementTrace trace;
    trace.eta = eta;
    trace.step = step;
    trace.points.reserve(n);
    for (std::size_t k = 0; k < n; ++k) trace.points.push_back({static_cast<double>(k) * step, e[k]});
    return trace;
}

TauStarResult tau_star(double eta, const TauStarOptions& opts, unsigned threads) {
    require_positive_eta(eta);
    if (!(opts.tolerance >= 0.0)) throw Error(Errc::InvalidParameter, "tolerance must be >= 0");
    const std::size_t n = grid_size(opts.window, opts.step, kMaxStep);
    const auto e = sample_entanglement(eta, n, opts.step, threads);

    const double e_max = *std::max_element(e.begin(), e.end());
    std::size_t first = 0;
    while (e[first] < e_max - opts.tolerance) ++first;

    return {eta, static_cast<double>(first) * opts.step, e_max, opts.window, opts.step, opts.tolerance};
}

}  // namespace cavlink
