// validation.hpp: seeded self-check suites: each compares two independent
// routes to the same quantity over a random sample and reports the worst error.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cavlink/cavity_network.hpp"
#include "cavlink/spin_dynamics.hpp"

namespace cavlink {

struct SuiteResult {
    std::string name;
    std::size_t samples = 0;
    double worst = 0.0;      // worst observed error in the suite's metric
    double tolerance = 0.0;
    bool passed = false;
};

struct ValidationOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    std::optional<double> tolerance;  // overrides every suite's own tolerance
    unsigned threads = 1;
};

std::vector<SuiteResult> run_validation(const ValidationOptions& opts);

// Random parameters away from the recycling singularity: |D| > 1e-3 (gamma^2 + delta^2).
NetworkParams random_network_params(std::mt19937_64& rng);

// Haar-like random pure state (normalized complex Gaussian vector).
TwoQubitPureState random_pure_state(std::mt19937_64& rng);

// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_error(double a, double b);

}  // namespace cavlink
