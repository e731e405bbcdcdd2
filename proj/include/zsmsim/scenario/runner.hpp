#pragma once

#include <string>
#include <vector>

#include "zsmsim/engine/world.hpp"
#include "zsmsim/scenario/metrics.hpp"

namespace zsm {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvariant = 2, kExitVerification = 3 };

struct RunOutput {
  std::string trace_text;
  std::string metrics_text;
  MetricsSummary metrics;
  RunResult result;
  std::vector<std::string> diagnostics;  // invariant violations
  int exit_code = kExitOk;
};

/// Builds the world, runs it for config.max_ticks and renders trace and
/// metrics. Exit code 2 when an invariant broke or the metrics disagree with
/// a recomputation from the trace.
RunOutput run_scenario(const ScenarioConfig& config, KernelMode mode = KernelMode::Parallel);

}  // namespace zsm
