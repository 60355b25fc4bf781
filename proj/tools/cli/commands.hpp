#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "descriptor.hpp"

namespace nabla::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,
  kExitNonIntegrable = 2,
  kExitNegative = 3,
  kExitInconclusive = 4,
};

/// Parsed command line.  Unset optionals mean "flag not given"; every
/// subcommand rejects flags it does not use.
struct CommandOptions {
  std::string command;
  std::string path;
  std::optional<std::size_t> depth;
  std::vector<std::string> radius;  // one exponent per variable, "inf" for the disc centre
  std::optional<std::string> eta;
  std::optional<std::string> lambda;
  std::optional<std::size_t> direction;  // 1-based
  std::vector<std::string> point;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> tol;
  std::optional<std::string> window;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> max_depth;
};

struct CommandResult {
  int exit_code = kExitOk;
  json report;
};

/// Runs a subcommand on an already-loaded descriptor document.
CommandResult execute(const CommandOptions& options, const json& descriptor);

/// Loads options.path and runs the subcommand.  I/O and parse failures
/// produce an error report with exit code 1.
CommandResult execute(const CommandOptions& options);

/// Byte-exact rendering used on standard output.
std::string render(const json& report);

}  // namespace nabla::cli
