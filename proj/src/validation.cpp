#include "cavlink/validation.hpp"

#include <cmath>
#include <numbers>

#include "cavlink/entanglement.hpp"
#include "cavlink/numerics.hpp"
#include "cavlink/parallel.hpp"

namespace cavlink {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Each sample gets its own generator seeded from (seed, suite, index) so that
// results are independent of the thread count.
Rng sample_rng(std::uint64_t seed, std::uint64_t suite, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(index)};
    return Rng(seq);
}

template <class Metric>
SuiteResult run_suite(const std::string& name, std::uint64_t suite_id, double default_tol,
                      const ValidationOptions& opts, Metric metric) {
    std::vector<double> err(opts.samples, 0.0);
    parallel_for(opts.samples, opts.threads, [&](std::size_t i) {
        Rng rng = sample_rng(opts.seed, suite_id, i);
        err[i] = metric(rng);
    });
    SuiteResult r;
    r.name = name;
    r.samples = opts.samples;
    r.tolerance = opts.tolerance.value_or(default_tol);
    for (double e : err) r.worst = std::isnan(e) ? e : std::max(r.worst, e);
    r.passed = !std::isnan(r.worst) && r.worst <= r.tolerance;
    return r;
}

}  // namespace

double relative_error(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

NetworkParams random_network_params(Rng& rng) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (;;) {
        NetworkParams p;
        p.gamma = std::pow(10.0, uniform(rng, -1.0, 1.0));
        p.delta = p.gamma * uniform(rng, -5.0, 5.0);
        p.chi = p.gamma * std::pow(10.0, uniform(rng, -3.0, -0.5));
        p.drive = std::polar(std::pow(10.0, uniform(rng, 0.0, 3.0)), uniform(rng, 0.0, two_pi));
        p.phi12 = uniform(rng, 0.0, two_pi);
        p.phi21 = uniform(rng, 0.0, two_pi);
        p.gamma_f = uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : uniform(rng, 0.0, 1.0);
        if (std::abs(denominator(p)) > 1e-3 * (p.gamma * p.gamma + p.delta * p.delta)) return p;
    }
}

TwoQubitPureState random_pure_state(Rng& rng) {
    std::normal_distribution<double> gauss;
    CVector4 v;
    for (auto& z : v) z = Cx(gauss(rng), gauss(rng));
    const double n = norm(v);
    for (auto& z : v) z /= n;
    return TwoQubitPureState(v);
}

std::vector<SuiteResult> run_validation(const ValidationOptions& opts) {
    std::vector<SuiteResult> out;

    out.push_back(run_suite("oracle_identity", 1, 1e-10, opts, [](Rng& rng) {
        const CouplingResult c = coupling(random_network_params(rng));
        return relative_error(c.j_oracle, c.j_closed);
    }));

    out.push_back(run_suite("fluctuation_closed_form", 2, 1e-12, opts, [](Rng& rng) {
        const NetworkParams p = random_network_params(rng);
        const SteadyFields s = steady_fields(p);
        const auto a = fluctuation_coefficients(p, s);
        const auto b = fluctuation_coefficients_closed(p, s);
        const double scale = std::max({std::abs(a.c_a1), std::abs(a.c_a2), std::abs(a.c_b1), std::abs(a.c_b2)});
        if (scale == 0.0) return 0.0;
        const double diff = std::max({std::abs(a.c_a1 - b.c_a1), std::abs(a.c_a2 - b.c_a2),
                                      std::abs(a.c_b1 - b.c_b1), std::abs(a.c_b2 - b.c_b2)});
        return diff / scale;
    }));

    out.push_back(run_suite("eigensystem", 3, 1e-10, opts, [](Rng& rng) {
        const double eta = uniform(rng, 1e-6, 2.0);
        const SpinParams sp = SpinParams::from_eta(1.0, eta);
        const CMatrix4 h = build_hamiltonian(sp);
        const HermEig4 num = eig_hermitian4(h);
        const AnalyticEigensystem an = analytic_eigensystem(sp);
        auto sorted = an.energies;
        std::sort(sorted.begin(), sorted.end());
        const double scale = h.max_abs();
        double worst = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(sorted[k] - num.values[k]) / scale);
            const CVector4& v = an.states[k].amplitudes();
            const CVector4 hv = h * v;
            for (std::size_t r = 0; r < 4; ++r) worst = std::max(worst, std::abs(hv[r] - an.energies[k] * v[r]) / scale);
        }
        return worst;
    }));

    out.push_back(run_suite("evolution", 4, 1e-10, opts, [](Rng& rng) {
        const double eta = uniform(rng, 0.01, 2.0);
        const double tau = uniform(rng, 0.0, 100.0);
        const auto analytic = evolve_analytic(eta, tau);
        const auto numeric = propagate(build_hamiltonian(SpinParams::from_eta(1.0, eta)), tau,
                                       TwoQubitPureState::ground().amplitudes());
        return 1.0 - fidelity(analytic.amplitudes(), numeric);
    }));

    out.push_back(run_suite("entanglement_consistency", 5, 1e-8, opts, [](Rng& rng) {
        const auto psi = random_pure_state(rng);
        return std::abs(concurrence_mixed(DensityMatrix::from_pure(psi)) - concurrence_pure(psi));
    }));

    return out;
}

}  // namespace cavlink
