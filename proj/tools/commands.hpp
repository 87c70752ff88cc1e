#pragma once

#include <iosfwd>
#include <vector>
#include <string>

#include "experiment_config.hpp"

namespace sos::cli {

struct CommandOptions {
    ExperimentConfig config;
    bool oracle = false;  // solve-closed: also run full backward induction
};

/// Each command writes CSV to `csv` and a one-line key=value summary to
/// `summary`. Returns an exit code.
int cmd_solve_open(const CommandOptions& options, std::ostream& csv, std::ostream& summary);
int cmd_solve_closed(const CommandOptions& options, std::ostream& csv, std::ostream& summary);
int cmd_simulate(const CommandOptions& options, std::ostream& csv, std::ostream& summary);
int cmd_sweep(const CommandOptions& options, std::ostream& csv, std::ostream& summary);

/// Full command-line entry point: parses flags, loads --config, applies
/// overrides (flags win), dispatches, and maps errors to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sos::cli
