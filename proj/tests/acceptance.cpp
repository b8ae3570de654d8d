// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cavlink/cavity_network.hpp"
#include "cavlink/entanglement.hpp"
#include "cavlink/error.hpp"
#include "cavlink/feasibility.hpp"
#include "cavlink/spin_dynamics.hpp"
#include "cli/commands.hpp"

#ifndef CAVLINK_CLI_PATH
#error "CAVLINK_CLI_PATH must name the cavlink executable"
#endif

using namespace cavlink;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail += "; ";
            else detail.clear();
            detail += what;
            pass = false;
        }
    }
};

std::string num(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

double uniform(std::mt19937_64& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Uniformly random non-singular network parameters.
NetworkParams sample_network(std::mt19937_64& g) {
    for (;;) {
        NetworkParams p;
        p.gamma = std::pow(10.0, uniform(g, -1, 1));
        p.delta = p.gamma * uniform(g, -5, 5);
        p.chi = p.gamma * std::pow(10.0, uniform(g, -3, -0.5));
        p.drive = std::polar(std::pow(10.0, uniform(g, 0, 3)), uniform(g, 0, 2 * kPi));
        p.phi12 = uniform(g, 0, 2 * kPi);
        p.phi21 = uniform(g, 0, 2 * kPi);
        p.gamma_f = uniform(g, 0, 1) < 0.5 ? 0.0 : uniform(g, 0, 1);
        if (std::abs(denominator(p)) > 1e-3 * (p.gamma * p.gamma + p.delta * p.delta)) return p;
    }
}

// exp(-i h t) by scaling and squaring of a Taylor series.
CMatrix4 expm_minus_i(const CMatrix4& h, double t) {
    CMatrix4 a = Cx(0.0, -t) * h;
    int squarings = 0;
    double n = a.max_abs() * 4.0;
    while (n > 0.25) {
        n /= 2.0;
        ++squarings;
    }
    a = Cx(std::ldexp(1.0, -squarings)) * a;
    CMatrix4 sum = CMatrix4::identity(), term = CMatrix4::identity();
    for (int k = 1; k <= 24; ++k) {
        term = Cx(1.0 / k) * (term * a);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

struct ProcessResult {
    int code = -1;
    std::string out;
};

ProcessResult run_process(const std::string& args) {
    ProcessResult r;
    const std::string cmd = std::string("\"") + CAVLINK_CLI_PATH + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[65536];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// True when a standalone alphabetic token reads nan, inf or infinity, as
// printed by any of the usual formatters ("-nan", "inf", "Infinity").
bool has_non_finite_token(const std::string& s) {
    std::string word;
    auto bad = [&] { return word == "nan" || word == "inf" || word == "infinity"; };
    for (const char c : s) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            continue;
        }
        if (bad()) return true;
        word.clear();
    }
    return bad();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion1() {
    Outcome o;
    std::mt19937_64 g(1001);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const NetworkParams p = sample_network(g);
        const auto c = coupling(p);
        worst = std::max(worst, rel(c.j_oracle, p.gamma * p.chi * p.chi * (c.theta1 + c.theta2)));
    }
    const double secs = seconds_since(t0);
    o.detail = "10000 samples, worst relative error " + num(worst) + ", " + num(secs) + " s";
    o.require(worst <= 1e-10, "worst relative error " + num(worst) + " > 1e-10");
    o.require(secs <= 5.0, "runtime " + num(secs) + " s > 5 s");
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::mt19937_64 g(1002);
    double worst = 0.0;
    for (int i = 0; i < 100;) {
        NetworkParams p;
        p.gamma = std::pow(10.0, uniform(g, -1, 1));
        p.delta = p.gamma * uniform(g, -5, 5);
        p.chi = 0.01 * p.gamma;
        p.drive = std::polar(std::pow(10.0, uniform(g, 0, 2)), uniform(g, 0, 2 * kPi));
        p.phi12 = uniform(g, 0, 2 * kPi);
        p.phi21 = 2.0 * std::atan2(p.delta, p.gamma) - p.phi12;
        if (std::abs(denominator(p)) <= 1e-3 * (p.gamma * p.gamma + p.delta * p.delta)) continue;
        const auto th = theta_variants(p, steady_fields(p));
        worst = std::max(worst, rel(th.theta1, th.theta2));
        ++i;
    }
    NetworkParams a;
    a.gamma = 1.0;
    a.delta = 0.5;
    a.chi = 0.1;
    a.drive = 1.0;
    a.phi12 = 0.3;
    a.phi21 = 0.9;
    const auto th = theta_variants(a, steady_fields(a));
    const double gap = std::abs(th.theta1 - th.theta2);
    o.detail = "symmetric manifold worst " + num(worst) + ", asymmetric |theta1 - theta2| = " + num(gap);
    o.require(worst <= 1e-10, "symmetric manifold worst " + num(worst) + " > 1e-10");
    o.require(gap > 1e-6, "asymmetric gap " + num(gap) + " <= 1e-6");
    return o;
}

Outcome criterion3() {
    Outcome o;
    NetworkParams p;
    p.gamma = 1.0;
    p.delta = 1.0;
    p.chi = 0.1;
    p.drive = 10.0;
    p.phi12 = kPi / 4;
    p.phi21 = kPi / 4;
    const auto s = steady_fields(p);
    const auto c = coupling(p);
    const double da = std::abs(s.alpha - Cx(10, -10));
    const double db = std::abs(s.beta - std::polar(10.0, -kPi / 4));
    const double dt = std::max(std::abs(c.theta1 + 100.0), std::abs(c.theta2 + 100.0));
    const double dj = std::abs(c.j_oracle + 2.0);
    o.detail = "j_oracle = " + num(c.j_oracle) + ", max deviation " + num(std::max({da, db, dt, dj}));
    o.require(da <= 1e-9, "alpha off by " + num(da));
    o.require(db <= 1e-9, "beta off by " + num(db));
    o.require(dt <= 1e-9, "theta off by " + num(dt));
    o.require(dj <= 1e-9, "j_oracle off by " + num(dj));
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 g(1004);
    double worst_value = 0.0, worst_residual = 0.0, worst_ortho = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double eta = 0.0;
        while (!(eta > 0.0)) eta = 2.0 - uniform(g, 0, 2);  // (0, 2]
        const auto sp = SpinParams::from_eta(1.0, eta);
        const CMatrix4 h = build_hamiltonian(sp);
        const auto es = analytic_eigensystem(sp);
        const double r = std::sqrt(sp.b() * sp.b() + sp.j() * sp.j());
        const std::array<double, 4> expected{-2.0 * r, -2.0 * sp.j(), 2.0 * sp.j(), 2.0 * r};
        const auto numeric = eig_hermitian4(h);
        for (std::size_t k = 0; k < 4; ++k) {
            worst_value = std::max(worst_value, rel(expected[k], numeric.values[k]));
            worst_value = std::max(worst_value, rel(es.energies[k], expected[k]));
            CVector4 res = h * es.states[k].amplitudes();
            for (std::size_t m = 0; m < 4; ++m) res[m] -= es.energies[k] * es.states[k][m];
            worst_residual = std::max(worst_residual, norm(res));
            for (std::size_t l = 0; l < 4; ++l) {
                const Cx ip = inner(es.states[k].amplitudes(), es.states[l].amplitudes());
                worst_ortho = std::max(worst_ortho, std::abs(ip - Cx(k == l ? 1.0 : 0.0)));
            }
        }
    }
    o.detail = "eigenvalue " + num(worst_value) + ", residual " + num(worst_residual) + ", orthonormality " +
               num(worst_ortho);
    o.require(worst_value <= 1e-10, "eigenvalue mismatch " + num(worst_value));
    o.require(worst_residual <= 1e-10, "residual " + num(worst_residual));
    o.require(worst_ortho <= 1e-10, "orthonormality " + num(worst_ortho));
    return o;
}

Outcome criterion5() {
    Outcome o;
    double worst_infidelity = 0.0, worst_sum = 0.0;
    bool c2_zero = true;
    CVector4 gg{};
    gg[basis::gg] = 1.0;
    for (double eta : {0.05, 0.1, 0.5, 1.0}) {
        const CMatrix4 h = build_hamiltonian(SpinParams::from_eta(1.0, eta));
        for (double tau : {0.1, 1.0, 10.0, 100.0}) {
            const CVector4 reference = expm_minus_i(h, tau) * gg;
            worst_infidelity = std::max(worst_infidelity, 1.0 - fidelity(evolve_analytic(eta, tau).amplitudes(), reference));
        }
        const auto c = initial_coefficients(eta);
        worst_sum = std::max(worst_sum, std::abs(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3] - 1.0));
        c2_zero = c2_zero && c[1] == 0.0;
    }
    o.detail = "worst 1 - fidelity " + num(worst_infidelity) + ", |sum c^2 - 1| " + num(worst_sum) + ", C2 exactly 0";
    o.require(worst_infidelity <= 1e-10, "1 - fidelity " + num(worst_infidelity));
    o.require(worst_sum <= 1e-10, "|sum c^2 - 1| " + num(worst_sum));
    o.require(c2_zero, "C2 != 0");
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = entanglement_trace(0.1, 1000.0, 0.01);
    const double secs = seconds_since(t0);
    double top = 0.0;
    bool in_range = true;
    for (const auto& p : tr.points) {
        top = std::max(top, p.e);
        in_range = in_range && p.e >= 0.0 && p.e <= 1.0;
    }
    const double e0 = tr.points.front().e;
    o.detail = std::to_string(tr.points.size()) + " points, E(0) = " + num(e0) + ", max E = " + num(top) + ", " +
               num(secs) + " s";
    o.require(e0 == 0.0, "E(0) = " + num(e0));
    o.require(top >= 0.99, "max E = " + num(top));
    o.require(in_range, "E outside [0, 1]");
    o.require(secs <= 10.0, "runtime " + num(secs) + " s > 10 s");
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::string list;
    double previous = 0.0;
    bool first = true;
    for (double eta : {0.4, 0.2, 0.1, 0.05}) {
        const double t = tau_star(eta).tau_star;
        list += (first ? "" : ", ") + num(t);
        o.require(first || t > previous, "tau* not increasing as eta falls at eta = " + num(eta));
        previous = t;
        first = false;
    }
    if (o.pass) o.detail = "tau* for eta = 0.4, 0.2, 0.1, 0.05: " + list;
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::mt19937_64 g(1008);
    std::normal_distribution<double> normal;
    auto random_state = [&] {
        CVector4 v;
        for (auto& z : v) z = Cx(normal(g), normal(g));
        const double n = norm(v);
        for (auto& z : v) z /= n;
        return v;
    };
    auto random_qubit = [&] {
        std::array<Cx, 2> q{Cx(normal(g), normal(g)), Cx(normal(g), normal(g))};
        const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
        return std::array<Cx, 2>{q[0] / n, q[1] / n};
    };
    auto random_unitary = [&] {
        const auto q = random_qubit();
        const double ph = uniform(g, 0, 2 * kPi);
        CMatrix<2> u;
        u(0, 0) = q[0];
        u(1, 0) = q[1];
        u(0, 1) = -std::polar(1.0, ph) * std::conj(q[1]);
        u(1, 1) = std::polar(1.0, ph) * std::conj(q[0]);
        return u;
    };

    const double r2 = 1.0 / std::sqrt(2.0);
    const TwoQubitPureState singlet(CVector4{Cx(0), Cx(r2), Cx(-r2), Cx(0)});
    const double e_singlet = eof_from_concurrence(concurrence_pure(singlet));
    const double e_singlet_mixed = eof_from_concurrence(concurrence_mixed(DensityMatrix::from_pure(singlet)));
    o.require(std::abs(e_singlet - 1.0) <= 1e-12 && std::abs(e_singlet_mixed - 1.0) <= 1e-9,
              "singlet E = " + num(e_singlet));

    double worst_product = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_qubit(), b = random_qubit();
        const TwoQubitPureState psi(CVector4{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]});
        worst_product = std::max(worst_product, eof_from_concurrence(concurrence_pure(psi)));
        worst_product = std::max(worst_product, eof_from_concurrence(concurrence_mixed(DensityMatrix::from_pure(psi))));
    }
    o.require(worst_product <= 1e-9, "product state E = " + num(worst_product));

    CMatrix4 werner;
    const CVector4 bell{Cx(r2), Cx(0), Cx(0), Cx(r2)};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) werner(i, j) = 0.8 * bell[i] * std::conj(bell[j]) + (i == j ? 0.05 : 0.0);
    const double cw = concurrence_mixed(DensityMatrix(werner));
    o.require(std::abs(cw - 0.7) <= 1e-9, "Werner concurrence " + num(cw));

    double worst_mix = 0.0, worst_lu = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TwoQubitPureState psi(random_state());
        const double cp = concurrence_pure(psi);
        worst_mix = std::max(worst_mix, std::abs(concurrence_mixed(DensityMatrix::from_pure(psi)) - cp));
        const CMatrix<2> u1 = random_unitary(), u2 = random_unitary();
        CVector4 moved{};
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t c = 0; c < 2; ++c)
                    for (std::size_t d = 0; d < 2; ++d) moved[2 * a + b] += u1(a, c) * u2(b, d) * psi[2 * c + d];
        worst_lu = std::max(worst_lu, std::abs(concurrence_pure(TwoQubitPureState(moved)) - cp));
    }
    o.require(worst_mix <= 1e-8, "mixed vs pure " + num(worst_mix));
    o.require(worst_lu <= 1e-9, "local-unitary invariance " + num(worst_lu));
    if (o.pass) {
        o.detail = "singlet E = " + num(e_singlet) + ", product max " + num(worst_product) + ", Werner " + num(cw) +
                   ", mixed vs pure " + num(worst_mix) + ", local unitary " + num(worst_lu);
    }
    return o;
}

// Rounds to four decimals, the precision at which the lossy ratios are stated.
bool matches_4dp(double x, double stated) { return std::abs(std::round(x * 1e4) - std::round(stated * 1e4)) < 0.5; }

Outcome criterion9() {
    Outcome o;
    const double two_pi = 2.0 * kPi;
    const RamanParams rp{2.5, 8.0, -20.0, 6.25, 0.0};
    const double chi = two_pi * chi_from_raman(rp).magnitude;
    const double j100 = j_estimate(chi, 100.0, two_pi * rp.gamma);
    const double j50 = j_estimate(chi, 50.0, two_pi * rp.gamma);
    const double gf = gamma_f_from_db({0.35, 1.0, LossConvention::PowerExponent});
    const auto lossy = lossy_coupling_report(1.0, gf);
    o.require(std::abs(chi - two_pi * 1.0) <= 1e-12, "chi = " + num(chi));
    o.require(std::abs(j100 - 50.3) <= 0.01 * 50.3, "J(100) = " + num(j100));
    o.require(std::abs(j50 - 25.1) <= 0.01 * 25.1, "J(50) = " + num(j50));
    o.require(std::abs(gf - 0.0806) <= 1e-4, "gamma_f = " + num(gf));
    o.require(matches_4dp(lossy.single, 0.9226), "single-pass ratio " + num(lossy.single) + " != 0.9226");
    o.require(matches_4dp(lossy.squared, 0.8513), "squared ratio " + num(lossy.squared) + " != 0.8513");
    if (o.pass) {
        o.detail = "chi = " + num(chi) + ", J(100) = " + num(j100) + ", J(50) = " + num(j50) + ", gamma_f = " + num(gf) +
                   ", ratios " + num(lossy.single) + ", " + num(lossy.squared);
    }
    return o;
}

Outcome criterion10() {
    Outcome o;
    const auto singular = run_process("coupling --delta 0 --phi12 0 --phi21 0");
    o.require(singular.code == 2, "singular case exit code " + std::to_string(singular.code));
    o.require(singular.out.find("error: resonant_recycling:") != std::string::npos, "no named diagnostic");

    o.require(has_non_finite_token("j_oracle = -nan\n") && has_non_finite_token("x,inf") &&
                  !has_non_finite_token("error: resonant_recycling: singular"),
              "NaN/Inf detector self-check");

    std::mt19937_64 g(1010);
    int points = 0, failures = 0, clean_errors = 0;
    auto in_process = [&](const std::vector<std::string>& args) {
        std::vector<std::string> full{"cavlink"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run_cli(full, out, err);
        ++points;
        if (has_non_finite_token(out.str()) || has_non_finite_token(err.str())) ++failures;
        if (code != 0) ++clean_errors;
    };
    auto any = [&](double lo, double hi) { return num(uniform(g, lo, hi)); };
    auto log_any = [&](double lo, double hi) { return num(std::pow(10.0, uniform(g, lo, hi))); };
    for (int i = 0; i < 10000; ++i) {
        const int kind = i % 10;
        if (kind < 7) {
            // wide parameter space, including near-resonant and singular corners
            const bool resonant = uniform(g, 0, 1) < 0.2;
            const std::string delta = resonant ? log_any(-14, -6) : any(-50, 50);
            const std::string phase = resonant ? log_any(-14, -6) : any(-10, 10);
            in_process({kind < 4 ? "coupling" : "steady", "--gamma", log_any(-3, 3), "--delta", delta, "--chi",
                        log_any(-6, 1), "--drive-re", any(-1e4, 1e4), "--drive-im", any(-1e4, 1e4), "--phi12", phase,
                        "--phi21", resonant ? "0" : any(-10, 10), "--gamma-f", resonant ? "0" : any(0, 3)});
        } else if (kind < 9) {
            in_process({"evolve", "--eta", log_any(-4, 2), "--tau-max", any(0.1, 5), "--step", any(0.005, 0.1)});
        } else {
            in_process({"feasibility", "--raman-g", any(-10, 10), "--raman-omega", any(-10, 10), "--raman-delta-a",
                        any(-50, 50), "--raman-gamma", log_any(-2, 2), "--nbar", any(0, 1000), "--db-per-km",
                        any(0, 5), "--length-km", any(0, 100)});
        }
    }
    o.detail = "singular exit " + std::to_string(singular.code) + "; fuzz " + std::to_string(points) + " runs, " +
               std::to_string(clean_errors) + " clean errors, " + std::to_string(failures) + " with NaN/Inf";
    o.require(failures == 0, std::to_string(failures) + " outputs contained NaN/Inf");
    return o;
}

Outcome criterion11() {
    Outcome o;
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"evolve --eta 0.1 --threads 1", "evolve --eta 0.1 --threads 4"},
        {"evolve --eta 0.1 --threads 4", "evolve --eta 0.1 --threads 4"},
        {"taustar --threads 1", "taustar --threads 4"},
        {"taustar --etas-log 0.05,0.5,8 --threads 4", "taustar --etas-log 0.05,0.5,8 --threads 4"},
        {"validate --samples 2000 --threads 1", "validate --samples 2000 --threads 4"},
        {"coupling --preset example-asym", "coupling --preset example-asym"},
        {"feasibility", "feasibility"},
    };
    std::size_t bytes = 0;
    for (const auto& [a, b] : pairs) {
        const auto ra = run_process(a), rb = run_process(b);
        o.require(ra.code == 0 && rb.code == 0, "'" + a + "' or '" + b + "' failed");
        o.require(ra.out == rb.out, "'" + a + "' and '" + b + "' differ");
        bytes += ra.out.size();
    }
    if (o.pass) o.detail = std::to_string(pairs.size()) + " invocation pairs byte-identical, " + std::to_string(bytes) + " bytes";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"oracle identity", criterion1},         {"theta audit", criterion2},
        {"worked point", criterion3},            {"spectral check", criterion4},
        {"evolution fidelity", criterion5},      {"entanglement trace", criterion6},
        {"tau* ordering", criterion7},           {"entanglement measures", criterion8},
        {"feasibility numbers", criterion9},     {"singularity guard", criterion10},
        {"determinism", criterion11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
