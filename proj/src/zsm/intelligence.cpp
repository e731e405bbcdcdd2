#include "zsmsim/zsm/intelligence.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

namespace {

std::string suffix_after(std::string_view id, std::string_view prefix) {
  if (id.substr(0, prefix.size()) == prefix) return std::string(id.substr(prefix.size()));
  return std::string(id);
}

}  // namespace

std::string_view to_string(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::ScaleVnf: return "ScaleVnf";
    case DecisionKind::NoAction: return "NoAction";
    case DecisionKind::Investigate: return "Investigate";
  }
  return "?";
}

DecisionKind parse_decision_kind(std::string_view text) {
  if (text == "ScaleVnf") return DecisionKind::ScaleVnf;
  if (text == "NoAction") return DecisionKind::NoAction;
  if (text == "Investigate") return DecisionKind::Investigate;
  throw Error(ErrorCode::PreconditionViolated, fmt::format("unknown decision kind '{}'", text));
}

Decision decide(const AnomalyEvent* event, const DecisionContext& ctx, const DecisionConfig& config) {
  Decision d;
  d.tick = ctx.tick;
  d.target_vnf = ctx.target_vnf;
  if (!event) {
    d.decision_id = fmt::format("dec-none-{}", ctx.tick);
    d.kind = DecisionKind::NoAction;
    d.rationale = "no-open-event";
    return d;
  }
  if (ctx.tick < event->onset_tick)
    throw Error(ErrorCode::StaleContext,
                fmt::format("context at tick {} predates onset {} of '{}'", ctx.tick, event->onset_tick,
                            event->event_id),
                "zsm.domain.intelligence");

  d.decision_id = "dec-" + suffix_after(event->event_id, "evt-");
  d.event_id = event->event_id;
  d.nf_id = event->nf_id;
  if (ctx.utilization < config.util_high) {
    d.kind = DecisionKind::Investigate;
    d.rationale = "util-below-high";
    return d;
  }
  const auto target_vcpu =
      static_cast<std::int64_t>(std::ceil(ctx.load / (config.util_target * ctx.capacity_per_vcpu)));
  const auto delta = target_vcpu - ctx.current_vcpu;
  if (delta <= 0) {
    d.kind = DecisionKind::Investigate;
    d.rationale = "no-headroom-gain";
    return d;
  }
  d.kind = DecisionKind::ScaleVnf;
  d.rationale = "util-at-or-above-high";
  d.requested_delta = {delta, 0, 0};
  d.rate_cap = static_cast<double>(ctx.current_vcpu) * ctx.capacity_per_vcpu * config.util_high;
  return d;
}

ControlPlanePolicy generate_dynamic_policy(const Decision& decision) {
  if (decision.kind != DecisionKind::ScaleVnf)
    throw Error(ErrorCode::PreconditionViolated,
                fmt::format("dynamic policies follow ScaleVnf decisions, not {}", to_string(decision.kind)));
  ControlPlanePolicy p;
  p.policy_id = fmt::format("dyn-{}-v{}", decision.nf_id, decision.tick);
  p.kind = PolicyKind::Dynamic;
  p.target_nf = decision.nf_id;
  p.body["admission_rate_cap"] = format_number(decision.rate_cap);
  p.body["vnf"] = decision.target_vnf;
  p.installed_at = decision.tick;
  p.provenance = decision.decision_id;
  return p;
}

Payload encode_policy(const ControlPlanePolicy& policy) {
  Payload p;
  p.set("policy_id", policy.policy_id);
  p.set("kind", policy.kind == PolicyKind::Static ? "Static" : "Dynamic");
  p.set("target_nf", policy.target_nf);
  p.set("installed_at", std::int64_t{policy.installed_at});
  p.set("provenance", policy.provenance);
  for (const auto& [k, v] : policy.body) p.set("body." + k, v);
  return p;
}

ControlPlanePolicy decode_policy(const Payload& p) {
  ControlPlanePolicy policy;
  policy.policy_id = p.str("policy_id");
  policy.kind = p.str("kind") == "Static" ? PolicyKind::Static : PolicyKind::Dynamic;
  policy.target_nf = p.str("target_nf");
  policy.installed_at = p.integer("installed_at");
  policy.provenance = p.find("provenance").value_or("");
  for (const auto& [k, v] : p.fields())
    if (k.rfind("body.", 0) == 0) policy.body[k.substr(5)] = v;
  return policy;
}

DomainServiceModel snapshot_model(const NfvInfrastructure& infra, Tick tick) {
  DomainServiceModel m;
  m.snapshot_tick = tick;
  m.pops = infra.pops();
  m.vnfs = infra.vnfs();
  for (const auto& [id, vnf] : m.vnfs) m.nf_to_vnf[vnf.hosted_nf] = id;
  return m;
}

std::string_view to_string(PlanRoute route) {
  switch (route) {
    case PlanRoute::NssmfIntegrated: return "NssmfIntegrated";
    case PlanRoute::AdapterToNfvo: return "AdapterToNfvo";
    case PlanRoute::NsmfExternal: return "NsmfExternal";
  }
  return "?";
}

PlanRoute route_for(DeploymentOption option) {
  switch (option) {
    case DeploymentOption::Integrated1A: return PlanRoute::NssmfIntegrated;
    case DeploymentOption::Integrated1B: return PlanRoute::AdapterToNfvo;
    case DeploymentOption::Complementary2: return PlanRoute::NsmfExternal;
  }
  return PlanRoute::NssmfIntegrated;
}

ScalePlan orchestrate(const Decision& decision, const DomainServiceModel& model, DeploymentOption option) {
  constexpr const char* kOrigin = "zsm.domain.orchestration";
  if (decision.kind != DecisionKind::ScaleVnf)
    throw Error(ErrorCode::PreconditionViolated, "only ScaleVnf decisions are orchestrated", kOrigin);
  if (model.snapshot_tick != decision.tick)
    throw Error(ErrorCode::StaleModel,
                fmt::format("model from tick {} used for decision at tick {}", model.snapshot_tick, decision.tick),
                kOrigin);
  auto vnf = model.vnfs.find(decision.target_vnf);
  if (vnf == model.vnfs.end())
    throw Error(ErrorCode::PreconditionViolated, fmt::format("VNF '{}' not in model", decision.target_vnf),
                kOrigin);
  const auto& pop = model.pops.at(vnf->second.pop);
  const auto headroom = pop.capacity - pop.allocated;

  auto clamp = [](std::int64_t requested, std::int64_t room) {
    return requested <= 0 ? requested : std::min(requested, std::max<std::int64_t>(room, 0));
  };
  const auto& req = decision.requested_delta;
  ResourceProfile granted{clamp(req.vcpu, headroom.vcpu), clamp(req.memory_mib, headroom.memory_mib),
                          clamp(req.storage_gib, headroom.storage_gib)};
  if ((req.vcpu > 0 && headroom.vcpu < kMinimumProfile.vcpu) || granted.is_zero())
    throw Error(ErrorCode::Infeasible,
                fmt::format("PoP '{}' headroom {} cannot serve {}", pop.pop_id, headroom.str(), req.str()), kOrigin);

  ScalePlan plan;
  plan.plan_id = "plan-" + suffix_after(decision.decision_id, "dec-");
  plan.decision_id = decision.decision_id;
  plan.target_vnf = decision.target_vnf;
  plan.nf_id = decision.nf_id;
  plan.requested_delta = req;
  plan.granted_delta = granted;
  plan.route = route_for(option);
  plan.tick = decision.tick;
  return plan;
}

}  // namespace zsm
