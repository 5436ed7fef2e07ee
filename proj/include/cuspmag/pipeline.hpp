#pragma once

#include "cuspmag/config.hpp"
#include "cuspmag/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cuspmag {

/// Commands that produce a report from a config.
const std::vector<std::string>& report_commands();
bool is_report_command(std::string_view name);

struct RunOptions {
  unsigned threads = 0;  // 0: take numerics.threads, else 1
};

/// Runs one command. Throws ConfigError / PreconditionError for unusable
/// input and NumericalError when a solver fails.
Report run_command(const Config& config, const std::string& command, const RunOptions& options = {});

struct Example {
  std::string name;  // written as <name>.cfg
  std::string description;
  std::string text;
};

/// Canned configs materialized by the `examples` command.
const std::vector<Example>& examples();

}  // namespace cuspmag
