#pragma once

#include <map>
#include <string>
#include <string_view>

#include "zsmsim/infra/nfv.hpp"
#include "zsmsim/slice/control_plane.hpp"
#include "zsmsim/zsm/analytics.hpp"

namespace zsm {

// --- Domain Intelligence ---------------------------------------------------------

enum class DecisionKind { ScaleVnf, NoAction, Investigate };
std::string_view to_string(DecisionKind kind);
DecisionKind parse_decision_kind(std::string_view text);

struct Decision {
  std::string decision_id;
  DecisionKind kind = DecisionKind::NoAction;
  std::string target_vnf;
  std::string nf_id;
  ResourceProfile requested_delta;
  std::string rationale;
  std::string event_id;
  Tick tick = 0;
  double rate_cap = 0.0;  // admission cap while the scaling is in flight
};

struct DecisionContext {
  Tick tick = 0;
  double utilization = 0.0;
  double load = 0.0;
  double capacity_per_vcpu = 10.0;
  std::int64_t current_vcpu = 1;
  std::string target_vnf;
};

struct DecisionConfig {
  double util_high = 0.8;
  double util_target = 0.5;
};

/// Threshold policy. `event` null means no open event (NoAction). Throws
/// StaleContext when the context predates the event onset.
Decision decide(const AnomalyEvent* event, const DecisionContext& context, const DecisionConfig& config = {});

/// Dynamic admission-cap policy for the NF being scaled.
ControlPlanePolicy generate_dynamic_policy(const Decision& decision);

Payload encode_policy(const ControlPlanePolicy& policy);
ControlPlanePolicy decode_policy(const Payload& payload);

// --- Domain Orchestration ----------------------------------------------------------

struct DomainServiceModel {
  Tick snapshot_tick = 0;
  std::map<std::string, NfviPop> pops;
  std::map<std::string, VnfInstance> vnfs;
  std::map<std::string, std::string> nf_to_vnf;
};

DomainServiceModel snapshot_model(const NfvInfrastructure& infra, Tick tick);

enum class PlanRoute { NssmfIntegrated, AdapterToNfvo, NsmfExternal };
std::string_view to_string(PlanRoute route);
PlanRoute route_for(DeploymentOption option);

struct ScalePlan {
  std::string plan_id;
  std::string decision_id;
  std::string target_vnf;
  std::string nf_id;
  ResourceProfile requested_delta;
  ResourceProfile granted_delta;
  PlanRoute route = PlanRoute::NssmfIntegrated;
  Tick tick = 0;
};

/// Grants min(requested, headroom) per component; Infeasible when less than
/// one vCPU is free for a vCPU request or nothing can be granted. Throws
/// StaleModel unless the model was taken at the decision tick.
ScalePlan orchestrate(const Decision& decision, const DomainServiceModel& model, DeploymentOption option);

}  // namespace zsm
