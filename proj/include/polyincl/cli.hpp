#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyincl/geometry.hpp"

namespace polyincl::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kSolveFailure = 3,
  kRecoveryFailure = 4,
  kVerificationFailure = 5,
};

/// A failure carrying the process exit code and the pipeline stage it came from.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), code(code), stage(stage) {}
  int code;
  std::string stage;
};

struct RunConfig {
  std::string command;               // gen, solve, exact, table, polygon-scan, export
  std::vector<std::string> inputs;   // body specs or file paths
  std::string out;                   // output path; empty writes to stdout
  std::string format;                // empty selects the command's default
  std::uint64_t seed = 1;
  std::string tol = "1e-10";         // feasibility tolerance, in (0, 1e-2]
  unsigned digits = 0;               // 0 selects the command's default
  int max_degree = 8;
  unsigned height_digits = 0;        // 0 derives it from digits and max_degree
  int starts = 32;
  int grid = 60;
  bool concentric = false;
  int pin_vertex = -1;               // >= 0 pins this vertex of P ...
  int pin_facet = 0;                 // ... to this facet of Q
  bool reflections = false;
  std::string edge = "1";            // gen: edge length
  int m_max = 12;                    // polygon-scan: largest container
  std::string formula_file;          // polygon-scan: comparison formula

  /// Throws CommandError(kUsage) on out-of-range settings.
  void validate() const;
  double tolerance() const;
  unsigned digits_or(unsigned fallback) const { return digits == 0 ? fallback : digits; }
};

/// Builtin name ("T", "C", "O", "D", "I", "ngon:<n>", edge 1) or a polytope
/// JSON file. Throws CommandError(kUsage).
Polytope load_body(const std::string& spec, unsigned digits = kDefaultDigits);

// Each command writes its payload to `out` and a one-line summary to `log`.
// Failures throw CommandError.
void cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log);
/// Returns kOk or kVerificationFailure; the report is written either way.
int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_polygon_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Validates, dispatches and maps failures to exit codes. The payload goes to
/// cfg.out when set (summary to `console`), otherwise to `console` (summary to
/// `diag`).
int run(const RunConfig& cfg, std::ostream& console, std::ostream& diag);

/// Parses the command line; returns the exit code of the whole program.
int main(int argc, const char* const* argv, std::ostream& console, std::ostream& diag);

}  // namespace polyincl::cli
