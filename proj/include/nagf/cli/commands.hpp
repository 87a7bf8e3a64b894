#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nagf/cli/output.hpp"
#include "nagf/cli/run_config.hpp"

namespace nagf::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_physics = 3, exit_io = 4 };

const char* version();

// Computes the table for cfg.command. Throws library errors unchanged.
Table run_command(const RunConfig& cfg);

// Full front end: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nagf::cli
