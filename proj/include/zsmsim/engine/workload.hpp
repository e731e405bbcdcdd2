#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsmsim/telemetry.hpp"

namespace zsm {

/// Multiplies the base load over [start, end).
struct Surge {
  Tick start = 0;
  Tick end = 0;
  double multiplier = 1.0;
};

struct LoadProfile {
  std::string nf_id;
  double base_load = 0.0;  // req/s
  std::vector<Surge> surges;

  double load_at(Tick tick) const;
  /// True when no two surges overlap.
  bool surges_disjoint() const;
};

inline constexpr double kUtilizationCap = 0.99;

/// load / (vcpu * capacity), capped at kUtilizationCap.
double utilization(double load, std::int64_t vcpu, double capacity_per_vcpu);
/// base_rt / (1 - u).
double response_time(double load, std::int64_t vcpu, double capacity_per_vcpu, double base_rt_ms);

/// ResponseTimeMs and UtilizationRatio samples of one NF at one tick.
std::pair<TelemetrySample, TelemetrySample> generate_telemetry(const std::string& nf_id, double load,
                                                               std::int64_t vcpu, double capacity_per_vcpu,
                                                               double base_rt_ms, Tick tick);

struct WorkloadItem {
  double load = 0.0;
  std::int64_t vcpu = 1;
};

struct WorkloadResult {
  double utilization = 0.0;
  double response_time_ms = 0.0;

  friend bool operator==(const WorkloadResult&, const WorkloadResult&) = default;
};

struct WorkloadParams {
  double capacity_per_vcpu = 10.0;
  double base_rt_ms = 10.0;
  double jitter_ms = 0.0;  // half-width of the zero-mean uniform noise
  std::uint64_t seed = 0;
  Tick tick = 0;
};

/// Uniform draw in [0, 1) keyed by (seed, tick, index); independent of
/// evaluation order.
double jitter_unit(std::uint64_t seed, Tick tick, std::uint64_t index);

/// Phase (a) over items in nf_id order. Both produce identical results.
void workload_serial(std::span<const WorkloadItem> items, std::span<WorkloadResult> out,
                     const WorkloadParams& params);
void workload_parallel(std::span<const WorkloadItem> items, std::span<WorkloadResult> out,
                       const WorkloadParams& params);

}  // namespace zsm
