#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zsmsim/fabric/trace.hpp"

namespace zsm {

class World;

struct NfMetrics {
  double max_rt_ms = 0.0;
  std::size_t over_threshold_ticks = 0;
  std::size_t scale_count = 0;

  friend bool operator==(const NfMetrics&, const NfMetrics&) = default;
};

struct MetricsSummary {
  std::size_t anomalies = 0;
  std::map<std::string, std::size_t> decisions;  // by kind; all kinds present
  std::map<std::string, NfMetrics> nfs;
  std::map<std::string, double> pop_peak_allocation;  // vCPU ratio

  friend bool operator==(const MetricsSummary&, const MetricsSummary&) = default;
};

/// Recomputes the summary from trace records alone.
MetricsSummary metrics_from_trace(const std::vector<TraceRecord>& records);
/// Summary from the world's own counters.
MetricsSummary metrics_from_world(const World& world);

/// Tab-separated lines: `global <name> <value>`, `nf <id> <key> <value>...`,
/// `pop <id> peak_allocation_ratio <value>`.
std::string format_metrics(const MetricsSummary& metrics);
MetricsSummary parse_metrics(std::string_view text);

}  // namespace zsm
