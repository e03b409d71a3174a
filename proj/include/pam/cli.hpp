#pragma once

#include <string>

#include "pam/config.hpp"

namespace pam {

enum ExitCode { exit_pass = 0, exit_violation = 1, exit_invalid = 2 };

struct CommandResult {
  int exit_code = exit_pass;
  std::string body;  // JSON or CSV text
  std::string format = "json";
};

// validate | spectrum | correlators | graph | positivity | verify
CommandResult run_command(const std::string& name, const RunConfig& cfg);

}  // namespace pam
