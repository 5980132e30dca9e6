/// @file analysis.hpp
/// Command implementations behind the CLI: each takes a parsed config and
/// produces a textual report, an optional CSV payload, a one-line machine
/// verdict, and an exit code (0 pass, 1 fail, 2 config / out-of-scope).
/// Everything is deterministic in (config, seed).
#pragma once

#include <string>

#include "orlicz/config.hpp"

namespace orlicz {

struct RunResult {
  int exit_code = 0;
  std::string report;
  std::string csv;  // envelope data when the command produces any
  std::string verdict_line;
};

/// condition: a0 | inc1 | almost-convex | equiv-conv | a1 | m |
///            azero-reduction | strong-phi
RunResult run_check(const AnalysisConfig& cfg, const std::string& condition);

RunResult run_envelope(const AnalysisConfig& cfg);
RunResult run_chain(const AnalysisConfig& cfg);
RunResult run_jensen(const AnalysisConfig& cfg);
RunResult run_norm(const AnalysisConfig& cfg);

}  // namespace orlicz
