#pragma once

// JSON system descriptions and the command runner behind the ssusy tool.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "ssusy/system.hpp"

namespace ssusy::cli {

enum class Command { Classify, Spectrum, Verify, Scan, HalfParity };
enum class Format { Default, Json, Csv };

struct ScanSpec {
  std::string parameter;  // theta | theta_l | mu | L
  double from = 0.0;
  double to = 0.0;
  int steps = 2;
};

struct RunConfig {
  Command command = Command::Classify;
  std::string system_json;
  std::size_t n_levels = 10;
  std::optional<ScanSpec> scan;
  std::string output;  // empty: the out stream passed to run()
  Format format = Format::Default;
  double tol = 1e-8;
};

/// Throws ParseError naming the offending field, or the validation errors
/// of SystemSpec.
SystemSpec load_system(const std::string& json_text);

/// Sorted-key matrix form of a spec; the fixed point of load/dump.
std::string canonical_system_json(const SystemSpec& spec);

/// "<param>:<from>:<to>:<steps>"; throws ParseError.
ScanSpec parse_scan(const std::string& text);
Command parse_command(const std::string& text);

/// Residual tolerance from SINGULAR_SUSY_TOL, 1e-8 when unset.
double tolerance_from_env();

/// 0 on success, 1 when verification fails, 2 on any error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ssusy::cli
