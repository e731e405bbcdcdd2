#include "zsmsim/engine/workload.hpp"

#include <algorithm>
#include <random>

#include "zsmsim/error.hpp"

namespace zsm {

double LoadProfile::load_at(Tick tick) const {
  double load = base_load;
  for (const auto& s : surges)
    if (tick >= s.start && tick < s.end) load *= s.multiplier;
  return load;
}

bool LoadProfile::surges_disjoint() const {
  auto sorted = surges;
  std::sort(sorted.begin(), sorted.end(), [](const Surge& a, const Surge& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].start < sorted[i - 1].end) return false;
  return true;
}

double utilization(double load, std::int64_t vcpu, double capacity_per_vcpu) {
  if (vcpu < 1) throw Error(ErrorCode::PreconditionViolated, "utilization needs at least one vCPU");
  return std::min(load / (static_cast<double>(vcpu) * capacity_per_vcpu), kUtilizationCap);
}

double response_time(double load, std::int64_t vcpu, double capacity_per_vcpu, double base_rt_ms) {
  return base_rt_ms / (1.0 - utilization(load, vcpu, capacity_per_vcpu));
}

std::pair<TelemetrySample, TelemetrySample> generate_telemetry(const std::string& nf_id, double load,
                                                               std::int64_t vcpu, double capacity_per_vcpu,
                                                               double base_rt_ms, Tick tick) {
  const double u = utilization(load, vcpu, capacity_per_vcpu);
  return {TelemetrySample{nf_id, Metric::ResponseTimeMs, base_rt_ms / (1.0 - u), tick},
          TelemetrySample{nf_id, Metric::UtilizationRatio, u, tick}};
}

double jitter_unit(std::uint64_t seed, Tick tick, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tick), static_cast<std::uint32_t>(static_cast<std::uint64_t>(tick) >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 gen(seq);
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

namespace {

inline WorkloadResult evaluate(const WorkloadItem& item, const WorkloadParams& p, std::uint64_t index) {
  const double u = std::min(item.load / (static_cast<double>(item.vcpu) * p.capacity_per_vcpu), kUtilizationCap);
  double rt = p.base_rt_ms / (1.0 - u);
  if (p.jitter_ms > 0.0) {
    rt += p.jitter_ms * (2.0 * jitter_unit(p.seed, p.tick, index) - 1.0);
    rt = std::max(rt, 1e-3);
  }
  return {u, rt};
}

void check_shapes(std::span<const WorkloadItem> items, std::span<WorkloadResult> out) {
  if (items.size() != out.size()) throw Error(ErrorCode::PreconditionViolated, "workload output size mismatch");
  for (const auto& i : items)
    if (i.vcpu < 1) throw Error(ErrorCode::PreconditionViolated, "workload item without vCPU");
}

}  // namespace

void workload_serial(std::span<const WorkloadItem> items, std::span<WorkloadResult> out,
                     const WorkloadParams& params) {
  check_shapes(items, out);
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = evaluate(items[i], params, i);
}

void workload_parallel(std::span<const WorkloadItem> items, std::span<WorkloadResult> out,
                       const WorkloadParams& params) {
  check_shapes(items, out);
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = evaluate(items[static_cast<std::size_t>(i)], params, static_cast<std::uint64_t>(i));
}

}  // namespace zsm
