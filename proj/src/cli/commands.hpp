#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace xxzq::cli {

enum ExitCode : int { kOk = 0, kUnexpected = 1, kConfigError = 2, kSolverFailure = 3, kAnalysisFailure = 4 };

// Raised by commands when an analysis step finds nothing to report.
class AnalysisFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int cmd_ground(Config& config, std::ostream& out, int threads);
int cmd_quench(Config& config, std::ostream& out, int threads);
int cmd_sweep(Config& config, std::ostream& out, int threads);
int cmd_scaling(Config& config, std::ostream& out, int threads);
int cmd_oracle_compare(Config& config, std::ostream& out, int threads);

// Full command line handling; returns the process exit code.
int run(int argc, char** argv);

}  // namespace xxzq::cli
