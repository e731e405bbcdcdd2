#include "zsmsim/scenario/runner.hpp"

#include <fmt/format.h>

namespace zsm {

RunOutput run_scenario(const ScenarioConfig& config, KernelMode mode) {
  RunOutput out;
  World world(config, mode);
  out.result = world.run_until(nullptr, config.max_ticks);
  out.trace_text = format_trace(world.trace().records());
  out.metrics = metrics_from_world(world);
  out.metrics_text = format_metrics(out.metrics);
  out.diagnostics = world.violations();
  if (metrics_from_trace(world.trace().records()) != out.metrics)
    out.diagnostics.push_back("metrics disagree with the recomputation from the trace");
  out.exit_code = out.diagnostics.empty() ? kExitOk : kExitInvariant;
  return out;
}

}  // namespace zsm
