#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cavlink::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return v;
}

void set_example_sym(RunConfig& cfg) {
    NetworkParams& p = cfg.network;
    p = NetworkParams{};
    p.gamma = 1.0;
    p.delta = 1.0;
    p.chi = 0.1;
    p.drive = 10.0;
    p.phi12 = std::numbers::pi / 4;
    p.phi21 = std::numbers::pi / 4;
    p.gamma_f = 0.0;
    p.unit = RateUnit::Dimensionless;
}

// Raman-derived chi, cavity decay raised to 2pi*6.25 MHz, delta << gamma,
// phases pi/4, and the drive scaled so that |alpha|^2 = 100.
void set_paper_feasibility(RunConfig& cfg) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    cfg.raman = RamanParams{2.5, 8.0, -20.0, 6.25, 0.0};
    cfg.nbars = {50.0, 100.0};
    cfg.db_per_km = 0.35;
    cfg.length_km = 1.0;

    NetworkParams& p = cfg.network;
    p = NetworkParams{};
    p.unit = RateUnit::AngularMHz;
    p.gamma = two_pi * cfg.raman.gamma;
    p.delta = 0.01 * p.gamma;
    p.chi = two_pi * chi_from_raman(cfg.raman).magnitude;
    p.phi12 = std::numbers::pi / 4;
    p.phi21 = std::numbers::pi / 4;
    p.drive = 1.0;
    const double unit_alpha = std::abs(steady_fields(p).alpha);
    p.drive = std::sqrt(100.0) / unit_alpha;
}

}  // namespace

RunConfig::RunConfig() {
    set_example_sym(*this);
    network.unit = RateUnit::AngularMHz;
}

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys{
        "gamma",       "delta",   "chi",     "drive-re",    "drive-im",    "phi12",     "phi21",
        "gamma-f",     "eta",     "tau-max", "step",        "tolerance",   "window",    "etas",
        "etas-log",    "raman-g", "raman-omega", "raman-delta-a", "raman-gamma", "nbar", "db-per-km",
        "length-km",   "units",   "format",  "out",         "threads",     "seed",      "samples"};
    return keys;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"example-sym", "example-asym", "paper-feasibility"};
    return names;
}

void apply_preset(RunConfig& cfg, std::string_view name) {
    if (name == "example-sym") {
        set_example_sym(cfg);
    } else if (name == "example-asym") {
        set_example_sym(cfg);
        cfg.network.delta = 0.5;
        cfg.network.phi12 = 0.3;
        cfg.network.phi21 = 0.9;
        cfg.network.drive = 1.0;
    } else if (name == "paper-feasibility") {
        set_paper_feasibility(cfg);
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
}

double parse_double(std::string_view text, std::string_view key) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view key) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) out.push_back(parse_double(item, key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<double> log_spaced(std::string_view text, std::string_view key) {
    const auto parts = parse_double_list(text, key);
    if (parts.size() != 3 || !(parts[0] > 0.0) || !(parts[1] > 0.0) || parts[2] < 1.0 ||
        parts[2] != std::floor(parts[2])) {
        throw ConfigError("'" + std::string(key) + "' expects lo,hi,n with lo, hi > 0 and integer n >= 1");
    }
    const auto n = static_cast<std::size_t>(parts[2]);
    if (n == 1) return {parts[0]};
    std::vector<double> out(n);
    const double a = std::log(parts[0]), b = std::log(parts[1]);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = parts[0];
    out.back() = parts[1];
    return out;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    auto num = [&] { return parse_double(value, key); };
    NetworkParams& p = cfg.network;

    if (key == "gamma") p.gamma = num();
    else if (key == "delta") p.delta = num();
    else if (key == "chi") p.chi = num();
    else if (key == "drive-re") p.drive.real(num());
    else if (key == "drive-im") p.drive.imag(num());
    else if (key == "phi12") p.phi12 = num();
    else if (key == "phi21") p.phi21 = num();
    else if (key == "gamma-f") p.gamma_f = num();
    else if (key == "eta") cfg.eta = num();
    else if (key == "tau-max") cfg.tau_max = num();
    else if (key == "step") cfg.step = num();
    else if (key == "window") cfg.window = num();
    else if (key == "tolerance") {
        cfg.tolerance = num();
        cfg.tolerance_set = true;
    } else if (key == "etas") cfg.etas = parse_double_list(value, key);
    else if (key == "etas-log") cfg.etas = log_spaced(value, key);
    else if (key == "raman-g") cfg.raman.g = num();
    else if (key == "raman-omega") cfg.raman.omega = num();
    else if (key == "raman-delta-a") cfg.raman.delta_a = num();
    else if (key == "raman-gamma") cfg.raman.gamma = num();
    else if (key == "nbar") cfg.nbars = parse_double_list(value, key);
    else if (key == "db-per-km") cfg.db_per_km = num();
    else if (key == "length-km") cfg.length_km = num();
    else if (key == "units") {
        if (value == "dimensionless") p.unit = RateUnit::Dimensionless;
        else if (value == "2pi*MHz" || value == "angular-mhz") p.unit = RateUnit::AngularMHz;
        else throw ConfigError("units must be 'dimensionless' or 'angular-mhz', got '" + std::string(value) + "'");
    } else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::Csv;
        else if (value == "text") cfg.format = OutputFormat::Text;
        else throw ConfigError("format must be 'csv' or 'text', got '" + std::string(value) + "'");
    } else if (key == "out") {
        if (value.empty()) throw ConfigError("'out' needs a path");
        cfg.out = std::filesystem::path(std::string(value));
    } else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_unsigned(value, key));
    else if (key == "seed") cfg.seed = parse_unsigned(value, key);
    else if (key == "samples") {
        cfg.samples = parse_unsigned(value, key);
        if (cfg.samples == 0) throw ConfigError("'samples' must be >= 1");
    } else {
        throw ConfigError("unknown setting '" + std::string(key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            out.emplace_back(std::string(key), std::string(value));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

RunConfig resolve_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries) {
    std::optional<std::string> preset;
    for (const auto& [k, v] : file_entries)
        if (k == "preset") preset = v;
    for (const auto& [k, v] : flag_entries)
        if (k == "preset") preset = v;

    RunConfig cfg;
    if (preset) apply_preset(cfg, *preset);
    for (const auto* entries : {&file_entries, &flag_entries}) {
        for (const auto& [k, v] : *entries) {
            if (k == "preset") continue;
            apply_setting(cfg, k, v);
        }
    }
    return cfg;
}

}  // namespace cavlink::cli
