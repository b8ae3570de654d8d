#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace cavlink::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitSingular = 2,
    kExitValidation = 3,
};

// Each command writes its data to `out` and warnings to `err`, and returns an
// exit code. Library errors propagate as cavlink::Error.
int cmd_steady(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_coupling(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_taustar(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_feasibility(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full CLI: argument parsing, config layering, dispatch, and the mapping of
// failures to `error: <code>: <message>` lines and exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cavlink::cli
