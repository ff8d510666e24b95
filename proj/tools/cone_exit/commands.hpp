#pragma once

#include "report.hpp"
#include "run_config.hpp"

namespace cone_exit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCrossCheck = 2, kUnconverged = 3 };

/// Drifts closer than this (radians) to a regime boundary trigger a warning.
inline constexpr double kProximityWarning = 1e-6;

Report cmd_classify(const RunConfig& config);
Report cmd_compare(const RunConfig& config);
Report cmd_map(const RunConfig& config);

}  // namespace cone_exit::cli
