#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cavlink/cavity_network.hpp"
#include "cavlink/entanglement.hpp"
#include "cavlink/error.hpp"
#include "cavlink/feasibility.hpp"
#include "cavlink/parallel.hpp"
#include "cavlink/validation.hpp"
#include "cli/format.hpp"

namespace cavlink::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Ordered key/value report, rendered as `key = value` text or two-column CSV.
class Report {
public:
    void add(std::string key, double value) { rows_.emplace_back(std::move(key), format_general(value)); }
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void warn(std::string code, std::string message) { warnings_.emplace_back(std::move(code), std::move(message)); }

    void write(OutputFormat fmt, std::ostream& out, std::ostream& err) const {
        if (fmt == OutputFormat::Csv) {
            out << "quantity,value\n";
            for (const auto& [k, v] : rows_) out << k << ',' << v << '\n';
            for (const auto& [c, m] : warnings_) err << "WARN " << c << ": " << m << '\n';
        } else {
            for (const auto& [k, v] : rows_) out << k << " = " << v << '\n';
            for (const auto& [c, m] : warnings_) out << "WARN " << c << ": " << m << '\n';
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
    std::vector<std::pair<std::string, std::string>> warnings_;
};

void add_complex(Report& r, const std::string& name, Cx z) {
    r.add(name + ".re", z.real());
    r.add(name + ".im", z.imag());
    r.add(name + ".abs", std::abs(z));
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ResonantRecycling:
        case Errc::SingularSystem:
        case Errc::NonFinite:
            return kExitSingular;
        default:
            return kExitUsage;
    }
}

const std::map<std::string, std::string>& setting_help() {
    static const std::map<std::string, std::string> help{
        {"gamma", "cavity decay rate gamma (> 0)"},
        {"delta", "cavity detuning delta"},
        {"chi", "dispersive coupling chi"},
        {"drive-re", "drive amplitude, real part"},
        {"drive-im", "drive amplitude, imaginary part"},
        {"phi12", "fiber phase 1 -> 2 (rad)"},
        {"phi21", "fiber phase 2 -> 1 (rad)"},
        {"gamma-f", "fiber loss exponent gamma_f (>= 0)"},
        {"eta", "transverse field ratio eta = B/J (> 0)"},
        {"tau-max", "last scaled time of the evolve grid"},
        {"step", "grid spacing in scaled time (<= 0.1)"},
        {"tolerance", "tau* tolerance below the maximum; validate: suite tolerance override"},
        {"window", "tau* search window in scaled time"},
        {"etas", "comma-separated eta list for taustar"},
        {"etas-log", "lo,hi,n log-spaced eta list for taustar"},
        {"raman-g", "single-photon Rabi frequency g (2pi*MHz)"},
        {"raman-omega", "classical Rabi frequency Omega (2pi*MHz)"},
        {"raman-delta-a", "atomic detuning (2pi*MHz, nonzero)"},
        {"raman-gamma", "cavity decay for the estimate (2pi*MHz)"},
        {"nbar", "comma-separated photon numbers"},
        {"db-per-km", "fiber attenuation in dB/km"},
        {"length-km", "fiber length in km"},
        {"units", "rate unit label: dimensionless | angular-mhz"},
        {"format", "csv | text"},
        {"out", "write the data to this file instead of stdout"},
        {"threads", "worker threads, 0 = all cores"},
        {"seed", "validation RNG seed"},
        {"samples", "samples per validation suite"},
    };
    return help;
}

void print_error(std::ostream& err, std::string_view code, std::string_view message) {
    std::string flat(message);
    for (char& c : flat)
        if (c == '\n' || c == '\r') c = ' ';
    err << "error: " << code << ": " << flat << '\n';
}

}  // namespace

int cmd_steady(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const NetworkParams& p = cfg.network;
    const SteadyFields s = steady_fields(p);
    Report r;
    r.add("units", std::string(to_string(p.unit)));
    add_complex(r, "alpha", s.alpha);
    add_complex(r, "beta", s.beta);
    add_complex(r, "denominator", denominator(p.validated()));
    for (const auto& d : validate_regime(p, s)) r.warn(d.code, d.message);
    r.write(cfg.format.value_or(OutputFormat::Text), out, err);
    return kExitOk;
}

int cmd_coupling(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const NetworkParams& p = cfg.network;
    const CouplingResult c = coupling(p);
    Report r;
    r.add("units", std::string(to_string(p.unit)));
    r.add("j_oracle", c.j_oracle);
    r.add("j_closed", c.j_closed);
    r.add("j_paper", c.j_paper);
    r.add("theta1", c.theta1);
    r.add("theta2", c.theta2);
    r.add("local1", c.local1);
    r.add("local2", c.local2);
    const double scale = std::max(std::abs(c.theta1), std::abs(c.theta2));
    if (std::abs(c.theta1 - c.theta2) > 1e-9 * scale) {
        r.warn("theta_mismatch", "theta1 != theta2 (difference " + format_general(c.theta1 - c.theta2) +
                                     "); j_paper = gamma*chi^2*theta1 differs from j_oracle");
    }
    for (const auto& d : validate_regime(p, steady_fields(p))) r.warn(d.code, d.message);
    r.write(cfg.format.value_or(OutputFormat::Text), out, err);
    return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const EntanglementTrace trace = entanglement_trace(cfg.eta, cfg.tau_max, cfg.step, cfg.threads);
    std::string buf;
    buf.reserve(trace.points.size() * 24);
    const bool csv = cfg.format.value_or(OutputFormat::Csv) == OutputFormat::Csv;
    buf += csv ? "tau,entanglement\n" : "# tau entanglement\n";
    for (const auto& pt : trace.points) {
        buf += format_fixed(pt.tau);
        buf += csv ? ',' : ' ';
        buf += format_fixed(pt.e);
        buf += '\n';
    }
    out << buf;
    return kExitOk;
}

int cmd_taustar(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    if (cfg.etas.empty()) throw ConfigError("eta list is empty");
    for (double eta : cfg.etas)
        if (!(eta > 0.0)) throw Error(Errc::DegenerateEta, "every eta must be > 0, got " + format_general(eta));

    const TauStarOptions opts{cfg.window, cfg.step, cfg.tolerance};
    std::vector<TauStarResult> rows(cfg.etas.size());
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) { rows[i] = tau_star(cfg.etas[i], opts, 1); });

    const bool csv = cfg.format.value_or(OutputFormat::Csv) == OutputFormat::Csv;
    std::string buf = csv ? "eta,tau_star,e_max\n" : "# eta tau_star e_max\n";
    const char sep = csv ? ',' : ' ';
    for (const auto& r : rows) {
        buf += format_fixed(r.eta) + sep + format_fixed(r.tau_star) + sep + format_fixed(r.e_max) + '\n';
    }
    out << buf;
    return kExitOk;
}

int cmd_feasibility(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const RamanParams& rp = cfg.raman;
    const ChiEstimate chi = chi_from_raman(rp);
    Report r;
    r.add("chi.over_2pi_mhz", chi.magnitude);
    r.add("chi.angular_mhz", kTwoPi * chi.magnitude);
    r.add("chi.sign", static_cast<double>(chi.sign));
    r.add("gamma.over_2pi_mhz", rp.gamma);
    for (double nbar : cfg.nbars) {
        // rates in 2pi*MHz: J/2pi = chi^2 nbar / (2 gamma) with everything over 2pi
        const double j = j_estimate(chi.magnitude, nbar, rp.gamma);
        const std::string key = "j.nbar_" + format_general(nbar);
        r.add(key + ".over_2pi_mhz", j);
        r.add(key + ".angular_mhz", kTwoPi * j);
    }
    const double gf_power = gamma_f_from_db({cfg.db_per_km, cfg.length_km, LossConvention::PowerExponent});
    const double gf_amp = gamma_f_from_db({cfg.db_per_km, cfg.length_km, LossConvention::AmplitudeExponent});
    r.add("gamma_f.power", gf_power);
    r.add("gamma_f.amplitude", gf_amp);
    const auto lp = lossy_coupling_report(1.0, gf_power);
    const auto la = lossy_coupling_report(1.0, gf_amp);
    r.add("lossy_ratio.power.single", lp.single);
    r.add("lossy_ratio.power.squared", lp.squared);
    r.add("lossy_ratio.amplitude.single", la.single);
    r.add("lossy_ratio.amplitude.squared", la.squared);
    r.write(cfg.format.value_or(OutputFormat::Text), out, err);
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ValidationOptions opts;
    opts.seed = cfg.seed;
    opts.samples = cfg.samples;
    opts.threads = cfg.threads;
    if (cfg.tolerance_set) opts.tolerance = cfg.tolerance;

    const auto results = run_validation(opts);
    bool ok = true;
    Report r;
    for (const auto& s : results) {
        ok = ok && s.passed;
        r.add(s.name, std::string(s.passed ? "PASS" : "FAIL") + " worst=" + format_general(s.worst) +
                          " tolerance=" + format_general(s.tolerance) + " samples=" + std::to_string(s.samples));
    }
    r.add("seed", std::to_string(cfg.seed));
    r.write(cfg.format.value_or(OutputFormat::Text), out, err);
    return ok ? kExitOk : kExitValidation;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cavlink: effective Ising coupling between atoms in fiber-linked driven cavities"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&, std::ostream&, std::ostream&);
    };
    const std::vector<Command> commands{
        {"steady", "steady intracavity fields alpha, beta", cmd_steady},
        {"coupling", "effective Ising coupling J and theta variants", cmd_coupling},
        {"evolve", "entanglement of formation E(tau) from |gg> as CSV", cmd_evolve},
        {"taustar", "time tau* to reach maximal entanglement, per eta", cmd_taustar},
        {"feasibility", "experimental estimates: chi, J(nbar), fiber loss", cmd_feasibility},
        {"validate", "run seeded oracle-equivalence suites", cmd_validate},
    };

    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::map<std::string, CLI::Option*>> opts;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        auto& store = raw[c.name];
        for (const auto& key : setting_keys()) {
            opts[c.name][key] = sub->add_option("--" + key, store[key], setting_help().at(key));
        }
        opts[c.name]["preset"] = sub->add_option("--preset", store["preset"], "example-sym | example-asym | paper-feasibility");
        opts[c.name]["config"] = sub->add_option("--config", store["config"], "key = value settings file");
    }

    try {
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        print_error(err, "usage", e.what());
        return kExitUsage;
    }

    const Command* chosen = nullptr;
    for (const auto& c : commands)
        if (app.got_subcommand(c.name)) chosen = &c;
    if (chosen == nullptr) {
        print_error(err, "usage", "a subcommand is required");
        return kExitUsage;
    }

    try {
        auto& store = raw[chosen->name];
        auto& given = opts[chosen->name];
        std::vector<std::pair<std::string, std::string>> file_entries;
        if (given["config"]->count() > 0) file_entries = read_config_file(store["config"]);
        for (const auto& [k, v] : file_entries)
            if (k == "config") throw ConfigError("config files cannot include other config files");

        std::vector<std::pair<std::string, std::string>> flag_entries;
        if (given["preset"]->count() > 0) flag_entries.emplace_back("preset", store["preset"]);
        for (const auto& key : setting_keys())
            if (given[key]->count() > 0) flag_entries.emplace_back(key, store[key]);

        const RunConfig cfg = resolve_config(file_entries, flag_entries);

        if (cfg.out) {
            std::ostringstream data;
            const int code = chosen->run(cfg, data, err);
            std::ofstream file(*cfg.out, std::ios::binary | std::ios::trunc);
            if (!file || !(file << data.str()) || !file.flush()) {
                print_error(err, "io", "cannot write '" + cfg.out->string() + "'");
                return kExitUsage;
            }
            return code;
        }
        return chosen->run(cfg, out, err);
    } catch (const ConfigError& e) {
        print_error(err, "config", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        print_error(err, to_string(e.code()), e.what());
        return exit_code_for(e.code());
    }
}

}  // namespace cavlink::cli
