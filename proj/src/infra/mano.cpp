#include "zsmsim/infra/mano.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

namespace {

constexpr const char* kNfvo = "mano.nfvo";
constexpr const char* kVnfm = "mano.vnfm";
constexpr const char* kVim = "mano.vim";
constexpr std::size_t kNoRecord = static_cast<std::size_t>(-1);

std::string delta_text(const ResourceProfile& d) {
  return fmt::format("delta_vcpu={} delta_memory={} delta_storage={}", d.vcpu, d.memory_mib, d.storage_gib);
}

std::string alloc_text(const NfviPop& p) {
  return fmt::format("pop={} alloc_vcpu={}/{} alloc_memory={}/{} alloc_storage={}/{}", p.pop_id, p.allocated.vcpu,
                     p.capacity.vcpu, p.allocated.memory_mib, p.capacity.memory_mib, p.allocated.storage_gib,
                     p.capacity.storage_gib);
}

// Grants as much of a positive request component as the headroom allows.
std::int64_t clamp_component(std::int64_t requested, std::int64_t headroom) {
  if (requested <= 0) return requested;
  return std::min(requested, std::max<std::int64_t>(headroom, 0));
}

}  // namespace

Mano::Mano(NfvInfrastructure& infra, Trace& trace, DomainResolver resolver, ManoStepLabels labels)
    : infra_(infra), trace_(trace), resolver_(std::move(resolver)), labels_(std::move(labels)) {}

std::size_t Mano::record(const ManoScope& scope, const std::string& label, const std::string& domain,
                         const std::string& source_service, const std::string& target_capability,
                         const std::string& detail) {
  return trace_.append({scope.tick, label, domain + "/" + source_service, domain + "/" + target_capability,
                        scope.correlation_id, scope.slice_id, detail});
}

ScaleOutcome Mano::nfvo_scale_vnf(const ScaleRequest& request, const ManoScope& scope) {
  const std::string& domain = scope.nfvo_domain;

  const auto validate = record(scope, "", domain, kNfvo, "mano.nfvo.validate",
                               fmt::format("request={} vnf={} {}", request.request_id, request.vnf_id,
                                           delta_text(request.delta)));
  const auto* vnf = infra_.find_vnf(request.vnf_id);
  const char* invalid = nullptr;
  if (!vnf)
    invalid = "unknown VNF";
  else if (request.delta.is_zero())
    invalid = "zero delta";
  else if (resolver_(vnf->pop) != domain)
    invalid = "VNF not managed by this NFVO";
  if (invalid) {
    trace_.annotate(validate, "error=ValidationFailed");
    throw Error(ErrorCode::ValidationFailed, fmt::format("{}: '{}'", invalid, request.vnf_id), kNfvo);
  }
  trace_.annotate(validate, "valid");

  const auto headroom = infra_.pop(vnf->pop).headroom();
  const auto feasibility = record(scope, "", domain, kNfvo, "mano.nfvo.feasibility",
                                  fmt::format("pop={} headroom_vcpu={}", vnf->pop, headroom.vcpu));
  ResourceProfile granted{clamp_component(request.delta.vcpu, headroom.vcpu),
                          clamp_component(request.delta.memory_mib, headroom.memory_mib),
                          clamp_component(request.delta.storage_gib, headroom.storage_gib)};
  const bool vcpu_starved = request.delta.vcpu > 0 && headroom.vcpu < kMinimumProfile.vcpu;
  if (vcpu_starved || granted.is_zero()) {
    trace_.annotate(feasibility, "error=Infeasible");
    throw Error(ErrorCode::Infeasible,
                fmt::format("PoP '{}' headroom {} cannot serve {}", vnf->pop, headroom.str(), request.delta.str()),
                kNfvo);
  }
  trace_.annotate(feasibility, fmt::format("granted_vcpu={}", granted.vcpu));

  ScaleRequest effective = request;
  effective.delta = granted;

  const auto prepare_idx = record(scope, labels_.prepare, domain, kNfvo, "mano.vnfm.prepare",
                                  fmt::format("vnf={} {}", request.vnf_id, delta_text(granted)));
  PreparedRequest prepared;
  try {
    prepared = vnfm_prepare(effective);
  } catch (Error& e) {
    trace_.annotate(prepare_idx, fmt::format("error={}", to_string(e.code())));
    throw;
  }
  trace_.annotate(prepare_idx, prepared.annotation);

  auto& live = infra_.vnf(request.vnf_id);
  std::size_t vim_idx = kNoRecord;
  try {
    VimTicket ticket = vnfm_scale_resource(prepared, scope, &vim_idx);
    live.resources = vim_modify_resources(ticket.vnf_id, ticket.delta);
  } catch (Error& e) {
    live.lifecycle_state = LifecycleState::Instantiated;
    if (vim_idx != kNoRecord) trace_.annotate(vim_idx, fmt::format("error={}", to_string(e.code())));
    throw;
  }
  trace_.annotate(vim_idx, alloc_text(infra_.pop(live.pop)));

  return ScaleOutcome{request.vnf_id, request.delta, granted, live.resources, granted != request.delta};
}

PreparedRequest Mano::vnfm_prepare(const ScaleRequest& request) {
  auto& vnf = infra_.vnf(request.vnf_id);
  if (vnf.lifecycle_state == LifecycleState::Scaling)
    throw Error(ErrorCode::AlreadyScaling, fmt::format("VNF '{}' is already scaling", vnf.vnf_id), kVnfm);
  const auto target = vnf.resources + request.delta;
  if (!target.fits_within(vnf.max_resources) || !kMinimumProfile.fits_within(target))
    throw Error(ErrorCode::LifecycleViolation,
                fmt::format("VNF '{}' would move to {} outside [{}, {}]", vnf.vnf_id, target.str(),
                            kMinimumProfile.str(), vnf.max_resources.str()),
                kVnfm);
  vnf.lifecycle_state = LifecycleState::Scaling;
  return PreparedRequest{request, "lifecycle_ok"};
}

VimTicket Mano::vnfm_scale_resource(const PreparedRequest& prepared, const ManoScope& scope,
                                    std::size_t* vim_record) {
  const auto& vnf = infra_.vnf(prepared.request.vnf_id);
  const std::string domain = scope.nfvo_domain.empty() ? resolver_(vnf.pop) : scope.nfvo_domain;
  VimTicket ticket{next_ticket_++, vnf.vnf_id, vnf.pop, prepared.request.delta, scope.correlation_id};
  record(scope, labels_.scale_resource, domain, kVnfm, "mano.nfvo.scale_resource",
         fmt::format("vnf={} {}", vnf.vnf_id, delta_text(ticket.delta)));
  const auto idx = record(scope, labels_.vim_modify, domain, kNfvo, "mano.vim.modify_resources",
                          fmt::format("ticket={} vnf={} {}", ticket.ticket_id, vnf.vnf_id, delta_text(ticket.delta)));
  if (vim_record) *vim_record = idx;
  return ticket;
}

ResourceProfile Mano::vim_modify_resources(const std::string& vnf_id, const ResourceProfile& delta) {
  auto& vnf = infra_.vnf(vnf_id);
  auto& pop = infra_.pop(vnf.pop);
  const auto resources = vnf.resources + delta;
  const auto allocated = pop.allocated + delta;
  if (!kMinimumProfile.fits_within(resources))
    throw Error(ErrorCode::BelowMinimum, fmt::format("VNF '{}' would drop to {}", vnf_id, resources.str()), kVim);
  if (!resources.fits_within(vnf.max_resources))
    throw Error(ErrorCode::LifecycleViolation,
                fmt::format("VNF '{}' would exceed {}", vnf_id, vnf.max_resources.str()), kVim);
  if (!allocated.fits_within(pop.capacity) || !allocated.non_negative())
    throw Error(ErrorCode::CapacityExceeded,
                fmt::format("PoP '{}' would hold {} of {}", pop.pop_id, allocated.str(), pop.capacity.str()), kVim);
  vnf.resources = resources;
  pop.allocated = allocated;
  vnf.lifecycle_state = LifecycleState::Instantiated;
  return vnf.resources;
}

}  // namespace zsm
