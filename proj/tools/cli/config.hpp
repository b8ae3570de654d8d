// config.hpp: run configuration for the cavlink CLI.
//
// Settings are layered: built-in defaults, then a named preset, then a
// `key = value` config file, then command-line flags. Every layer goes through
// apply_setting(), so a key means the same thing in a file and on the command line.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavlink/cavity_network.hpp"
#include "cavlink/feasibility.hpp"

namespace cavlink::cli {

enum class OutputFormat { Csv, Text };

struct RunConfig {
    NetworkParams network;  // defaults: the example-sym numbers, labelled 2pi*MHz

    double eta = 0.1;
    double tau_max = 1000.0;
    double step = 0.01;
    double window = 1e4;
    double tolerance = 1e-2;
    bool tolerance_set = false;
    std::vector<double> etas{0.4, 0.2, 0.1, 0.05};

    // feasibility inputs, in units of 2*pi*MHz
    RamanParams raman{2.5, 8.0, -20.0, 6.25, 0.0};
    std::vector<double> nbars{50.0, 100.0};
    double db_per_km = 0.35;
    double length_km = 1.0;

    std::optional<OutputFormat> format;  // unset: per-command default
    std::optional<std::filesystem::path> out;
    unsigned threads = 0;  // 0: hardware concurrency
    std::uint64_t seed = 20240601;
    std::size_t samples = 1000;

    RunConfig();
};

// Thrown for malformed settings, unknown keys or presets; maps to exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Keys accepted by apply_setting (and as --flags). "preset" and "config" are
// handled by the layering logic, not here.
const std::vector<std::string>& setting_keys();

const std::vector<std::string>& preset_names();

void apply_preset(RunConfig& cfg, std::string_view name);

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Parses `key = value` lines; `#` starts a comment. Keys are returned in file order.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

// Layers defaults < preset < config entries < flag entries. A preset named in
// the flags wins over one named in the config file.
RunConfig resolve_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries);

// Strict locale-independent number parsing.
double parse_double(std::string_view text, std::string_view key);
std::vector<double> parse_double_list(std::string_view text, std::string_view key);

// "lo,hi,n": n values log-spaced from lo to hi inclusive.
std::vector<double> log_spaced(std::string_view text, std::string_view key);

}  // namespace cavlink::cli
