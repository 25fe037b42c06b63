#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sylvester::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitCertificate = 3;

enum class OutputFormat { json, csv, pretty };

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  unsigned workers = 1;
  OutputFormat output = OutputFormat::json;
  int n = 4;
  /// As given on the command line: inline JSON or a file path.
  std::string body;
};

/// Parses argv (argv[0] is the program name), runs the subcommand and writes
/// the document to `out`; diagnostics go to `err`. Returns the exit code.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sylvester::cli
