#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "zsmsim/engine/config.hpp"
#include "zsmsim/fabric/fabric.hpp"
#include "zsmsim/infra/mano.hpp"
#include "zsmsim/mgmt3gpp/management.hpp"
#include "zsmsim/slice/control_plane.hpp"
#include "zsmsim/slice/slice_model.hpp"
#include "zsmsim/zsm/domain_services.hpp"

namespace zsm {

inline constexpr const char* kE2eDomain = "e2e";
inline constexpr const char* kCnDomain = "e2e-cn";
inline constexpr const char* kManoDomain = "nfv-mano";
inline constexpr const char* k3gppDomain = "3gpp-ms";

/// Descriptor set and exposure policy of every domain kind for one option.
/// Slice domains get a fixed descriptor set so later slices never alter it.
DomainFactory standard_domain_factory(DeploymentOption option);
std::string virtualization_domain(const std::string& pop_id);

struct SimClock {
  Tick tick = 0;
  std::uint64_t seed = 0;
};

/// Runs actions due at a tick in (tick, key, insertion) order.
class Scheduler {
 public:
  void schedule(Tick tick, std::string key, std::function<void()> action);
  std::size_t run_due(Tick now);
  std::size_t pending() const { return queue_.size(); }

 private:
  std::map<std::tuple<Tick, std::string, std::uint64_t>, std::function<void()>> queue_;
  std::uint64_t seq_ = 0;
};

enum class KernelMode { Serial, Parallel };

enum class StopReason { Predicate, MaxTicks };
std::string_view to_string(StopReason reason);

struct RunResult {
  StopReason reason = StopReason::MaxTicks;
  Tick ticks = 0;
};

/// Per-NF observations taken straight from the workload kernel.
struct NfStats {
  double max_rt_ms = 0.0;
  std::size_t over_threshold_ticks = 0;
  std::size_t samples = 0;
};

/// The whole simulated system for one scenario.
class World {
 public:
  explicit World(ScenarioConfig config, KernelMode mode = KernelMode::Parallel);

  World(const World&) = delete;
  World& operator=(const World&) = delete;

  /// Advances one tick through phases (a)-(f); returns the events raised.
  std::vector<AnomalyEvent> tick();
  RunResult run_until(const std::function<bool(const World&)>& predicate, Tick max_ticks);

  Tick now() const { return clock_.tick; }
  const ScenarioConfig& config() const { return config_; }
  Fabric& fabric() { return fabric_; }
  const Fabric& fabric() const { return fabric_; }
  const Trace& trace() const { return fabric_.trace(); }
  NfvInfrastructure& infra() { return infra_; }
  const NfvInfrastructure& infra() const { return infra_; }
  const SliceCatalog& catalog() const { return *catalog_; }
  Mano& mano() { return *mano_; }
  Nssmf& nssmf() { return *nssmf_; }
  Nsmf& nsmf() { return *nsmf_; }

  DomainServices& services(const std::string& domain_id);
  const std::map<std::string, std::unique_ptr<DomainServices>>& loops() const { return loops_; }
  const UdsfStore* udsf(const std::string& nf_id) const;

  const std::vector<std::string>& violations() const { return violations_; }
  const std::map<std::string, NfStats>& nf_stats() const { return nf_stats_; }
  const std::map<std::string, double>& pop_peaks() const { return pop_peaks_; }
  std::size_t completed_scalings() const;
  std::size_t failed_chains() const;
  std::vector<LoopOutcome> outcomes() const;

 private:
  void build_domains();
  void build_slices();
  void build_infrastructure();
  void build_services();
  void record_initial_state();
  void track_pops();

  void phase_workload(std::vector<WorkloadResult>& results);
  void phase_collection(const std::vector<WorkloadResult>& results);
  std::vector<AnomalyEvent> phase_analytics();
  void phase_control();
  void check_invariants();

  ScenarioConfig config_;
  KernelMode mode_;
  SimClock clock_;
  Fabric fabric_;
  NfvInfrastructure infra_;
  std::unique_ptr<SliceCatalog> catalog_;
  std::unique_ptr<Mano> mano_;
  std::unique_ptr<Nssmf> nssmf_;
  std::unique_ptr<Nsmf> nsmf_;
  std::map<std::string, std::unique_ptr<DomainServices>> loops_;
  std::map<std::string, UdsfStore> udsf_;
  Scheduler scheduler_;

  std::vector<const LoadProfile*> monitored_;  // nf_id order
  std::vector<WorkloadItem> items_;
  std::map<std::string, NfStats> nf_stats_;
  std::map<std::string, double> pop_peaks_;
  std::vector<std::string> violations_;
};

}  // namespace zsm
