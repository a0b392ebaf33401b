#pragma once

#include <string>
#include <vector>

#include "fxr/response.hpp"

namespace fxr::cli {

// Shared knobs of the batch commands. String-typed fields allow "both";
// resolve_scales / resolve_zeros expand them. Validation failures are usage
// errors (exit code 2), not per-pair errors.
struct RunConfig {
  std::vector<std::string> pairs;  // symbols, or the single token "ALL"
  std::vector<int> years;
  std::string scale = "both";          // trade | physical | both
  uint32_t tau_max = 1000;
  std::string zero_handling = "exclude";  // exclude | include | both
  std::string input_dir;
  std::string output_dir = "out";
  std::string format = "csv";  // csv | json | both
  std::string glob = "*{pair}*{year}*";
  int workers = 1;
  bool log_returns = false;
  bool week_average = false;  // sensitivity option: equal-weight weekly curves
  int stamp_offset_minutes = -300;
  std::string registry_path;  // empty: builtin table
  std::string curves_dir;     // spread-groups: reuse estimated curves
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Scale> resolve_scales(const RunConfig& cfg);
std::vector<ZeroHandling> resolve_zeros(const RunConfig& cfg);
ReturnKind resolve_return_kind(const RunConfig& cfg);

// "EUR/USD" -> "EURUSD" (filename token)
std::string pair_token(const std::string& symbol);

// Throws ConfigError on contradictory or incomplete settings.
void validate_common(const RunConfig& cfg);

}  // namespace fxr::cli
