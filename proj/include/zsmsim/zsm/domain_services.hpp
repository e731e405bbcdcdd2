#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsmsim/error.hpp"
#include "zsmsim/fabric/fabric.hpp"
#include "zsmsim/infra/nfv.hpp"
#include "zsmsim/slice/control_plane.hpp"
#include "zsmsim/slice/slice_model.hpp"
#include "zsmsim/thresholds.hpp"
#include "zsmsim/zsm/analytics.hpp"
#include "zsmsim/zsm/intelligence.hpp"

namespace zsm {

inline constexpr const char* kCollection = "zsm.domain.data.collection";
inline constexpr const char* kStorage = "zsm.domain.data.storage";
inline constexpr const char* kAnalytics = "zsm.domain.analytics";
inline constexpr const char* kForecast = "zsm.domain.analytics.forecast";
inline constexpr const char* kAnomalyTopicPrefix = "zsm.domain.analytics.anomaly.";
inline constexpr const char* kIntelligence = "zsm.domain.intelligence";
inline constexpr const char* kOrchestration = "zsm.domain.orchestration";
inline constexpr const char* kControl = "zsm.domain.control";
inline constexpr const char* kControlLifecycle = "zsm.domain.control.resource_lifecycle";
inline constexpr const char* kNwdafForecast = "cp.nwdaf.forecast";
inline constexpr const char* kPcfPolicy = "cp.pcf.policy";
inline constexpr const char* kUdsfStorage = "cp.udsf.storage";
/// Pseudo-target of the record closing a closed-loop chain.
inline constexpr const char* kLoopOutcome = "zsm.loop.outcome";

struct LoopSettings {
  DeploymentOption option = DeploymentOption::Integrated1A;
  Thresholds thresholds;
  /// First hop of Domain Control: the integrated NSSMF, or the adapter in
  /// front of the external NSMF.
  CapabilityRef control_target;
};

struct ControlTicket {
  ScalePlan plan;
  std::string correlation_id;
};

struct LoopOutcome {
  std::string correlation_id;
  std::string slice_id;
  std::string nf_id;
  std::string vnf_id;
  Tick tick = 0;
  bool scaled = false;
  std::optional<ErrorCode> error;
  std::string stopped_at;  // service kind where a failed chain stopped
  ScaleOutcome outcome;
};

/// ZSM services of one SliceSpecific domain and the closed loop running over
/// them: collection, storage, analytics (detection, forecasting, topic),
/// intelligence, orchestration and control.
class DomainServices {
 public:
  DomainServices(Fabric& fabric, const SliceCatalog& catalog, const NfvInfrastructure& infra,
                 std::string domain_id, std::string slice_id, LoopSettings settings);

  DomainServices(const DomainServices&) = delete;
  DomainServices& operator=(const DomainServices&) = delete;

  void bind_handlers();

  /// Routes one stream (Domain Data Collection). NoMgmtInterface when a sample
  /// comes from an NF without a management interface.
  RoutedCounts collect(const std::vector<TaggedSample>& stream, const CallScope& scope);

  /// Phase (c): detection, clearing, topic publication.
  std::vector<AnomalyEvent> run_analytics(Tick tick);
  /// Sends one forecast request to NWDAF or ZSM analytics.
  std::optional<double> request_forecast(const std::string& nf_id, Tick horizon, Tick tick);
  /// Phase (d): decisions for the events raised this tick.
  void run_intelligence(Tick tick);
  /// Phase (e): orchestration and dispatch to Domain Control.
  void run_orchestration(Tick tick);
  /// Phase (f): pops the next queued ticket, if any.
  std::optional<ControlTicket> next_ticket();
  /// Executes a ticket through the option's route and closes the chain.
  LoopOutcome execute(const ControlTicket& ticket, Tick tick);

  /// Domain Control's resource lifecycle management call for `plan`.
  ScaleOutcome control_execute(const ScalePlan& plan, const CallScope& scope);

  const std::string& domain_id() const { return domain_id_; }
  const std::string& slice_id() const { return slice_id_; }
  const DomainDataStorage& storage() const { return storage_; }
  const std::vector<TelemetrySample>& analytics_window(const std::string& nf_id) const;
  const AnomalyTracker& tracker() const { return tracker_; }
  const PolicyControl& policies() const { return policies_; }
  const std::map<DecisionKind, std::size_t>& decision_counts() const { return decision_counts_; }
  const std::vector<LoopOutcome>& outcomes() const { return outcomes_; }
  std::string anomaly_topic() const { return kAnomalyTopicPrefix + slice_id_; }

 private:
  ServiceRef service(const char* kind) const { return {domain_id_, kind}; }
  CapabilityRef capability_ref(const std::string& name) const { return {domain_id_, name}; }
  void close_chain(LoopOutcome outcome, const std::string& source_kind, const std::string& detail, Tick tick);
  void fail_chain(const std::string& correlation_id, const std::string& nf_id, const std::string& vnf_id,
                  const Error& error, Tick tick);

  Payload on_collect(const MessageEnvelope& env);
  Payload on_store(const MessageEnvelope& env);
  Payload on_analyze(const MessageEnvelope& env);
  Payload on_forecast(const MessageEnvelope& env);
  Payload on_nwdaf_forecast(const MessageEnvelope& env);
  Payload on_decide(const MessageEnvelope& env);
  Payload on_orchestrate(const MessageEnvelope& env);
  Payload on_file_ticket(const MessageEnvelope& env);
  Payload on_install_policy(const MessageEnvelope& env);

  Fabric& fabric_;
  const SliceCatalog& catalog_;
  const NfvInfrastructure& infra_;
  std::string domain_id_;
  std::string slice_id_;
  LoopSettings settings_;

  DomainDataStorage storage_;
  std::map<std::string, std::vector<TelemetrySample>> windows_;
  AnomalyTracker tracker_;
  PolicyControl policies_;

  struct PendingEvent {
    AnomalyEvent event;
    std::string correlation_id;
  };
  struct PendingDecision {
    Decision decision;
    std::string correlation_id;
  };
  std::vector<PendingEvent> new_events_;
  std::map<std::string, AnomalyEvent> events_;
  std::vector<PendingDecision> new_decisions_;
  std::map<std::string, Decision> decisions_;
  std::map<std::string, ScalePlan> plans_;
  std::deque<ControlTicket> tickets_;
  std::map<DecisionKind, std::size_t> decision_counts_;
  std::vector<LoopOutcome> outcomes_;
};

}  // namespace zsm
