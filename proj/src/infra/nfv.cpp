#include "zsmsim/infra/nfv.hpp"

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

std::string_view to_string(LifecycleState state) {
  switch (state) {
    case LifecycleState::Instantiated: return "Instantiated";
    case LifecycleState::Scaling: return "Scaling";
    case LifecycleState::Failed: return "Failed";
  }
  return "?";
}

std::string_view to_string(RequestOrigin origin) {
  switch (origin) {
    case RequestOrigin::Nssmf: return "Nssmf";
    case RequestOrigin::Adapter: return "Adapter";
    case RequestOrigin::OsMaNfvo: return "OsMaNfvo";
  }
  return "?";
}

RequestOrigin parse_origin(std::string_view text) {
  if (text == "Nssmf") return RequestOrigin::Nssmf;
  if (text == "Adapter") return RequestOrigin::Adapter;
  if (text == "OsMaNfvo") return RequestOrigin::OsMaNfvo;
  throw Error(ErrorCode::PreconditionViolated, fmt::format("unknown request origin '{}'", text));
}

Payload encode_scale_request(const ScaleRequest& r) {
  Payload p;
  p.set("op", "ScaleVnf");
  p.set("request_id", r.request_id);
  p.set("vnf", r.vnf_id);
  p.set("delta_vcpu", r.delta.vcpu);
  p.set("delta_memory", r.delta.memory_mib);
  p.set("delta_storage", r.delta.storage_gib);
  p.set("origin", std::string(to_string(r.origin)));
  return p;
}

ScaleRequest decode_scale_request(const Payload& p, std::string correlation_id) {
  if (p.str("op") != "ScaleVnf")
    throw Error(ErrorCode::PreconditionViolated, fmt::format("unexpected operation '{}'", p.str("op")));
  ScaleRequest r;
  r.request_id = p.str("request_id");
  r.vnf_id = p.str("vnf");
  r.delta = {p.integer_or("delta_vcpu", 0), p.integer_or("delta_memory", 0), p.integer_or("delta_storage", 0)};
  r.origin = p.has("origin") ? parse_origin(p.str("origin")) : RequestOrigin::Nssmf;
  r.correlation_id = std::move(correlation_id);
  return r;
}

Payload encode_scale_outcome(const ScaleOutcome& o) {
  Payload p;
  p.set("vnf", o.vnf_id);
  p.set("requested_vcpu", o.requested.vcpu);
  p.set("requested_memory", o.requested.memory_mib);
  p.set("requested_storage", o.requested.storage_gib);
  p.set("granted_vcpu", o.granted.vcpu);
  p.set("granted_memory", o.granted.memory_mib);
  p.set("granted_storage", o.granted.storage_gib);
  p.set("vcpu", o.resources.vcpu);
  p.set("memory", o.resources.memory_mib);
  p.set("storage", o.resources.storage_gib);
  p.set("clamped", std::int64_t{o.clamped ? 1 : 0});
  return p;
}

ScaleOutcome decode_scale_outcome(const Payload& p) {
  ScaleOutcome o;
  o.vnf_id = p.str("vnf");
  o.requested = {p.integer("requested_vcpu"), p.integer("requested_memory"), p.integer("requested_storage")};
  o.granted = {p.integer("granted_vcpu"), p.integer("granted_memory"), p.integer("granted_storage")};
  o.resources = {p.integer("vcpu"), p.integer("memory"), p.integer("storage")};
  o.clamped = p.integer("clamped") != 0;
  return o;
}

void NfvInfrastructure::add_pop(const std::string& pop_id, const ResourceProfile& capacity) {
  if (pops_.count(pop_id)) throw Error(ErrorCode::ValidationError, fmt::format("duplicate PoP '{}'", pop_id));
  if (!capacity.non_negative())
    throw Error(ErrorCode::ValidationError, fmt::format("PoP '{}' has negative capacity", pop_id));
  pops_[pop_id] = NfviPop{pop_id, capacity, {}};
}

void NfvInfrastructure::add_vnf(VnfInstance vnf) {
  auto& host = pop(vnf.pop);
  if (vnfs_.count(vnf.vnf_id))
    throw Error(ErrorCode::ValidationError, fmt::format("duplicate VNF '{}'", vnf.vnf_id));
  if (!vnf.resources.fits_within(vnf.max_resources) || !kMinimumProfile.fits_within(vnf.resources))
    throw Error(ErrorCode::LifecycleViolation,
                fmt::format("VNF '{}' starts outside its lifecycle bounds", vnf.vnf_id));
  if (!(host.allocated + vnf.resources).fits_within(host.capacity))
    throw Error(ErrorCode::CapacityExceeded,
                fmt::format("PoP '{}' cannot host VNF '{}' ({})", vnf.pop, vnf.vnf_id, vnf.resources.str()));
  host.allocated += vnf.resources;
  vnfs_[vnf.vnf_id] = std::move(vnf);
}

const NfviPop& NfvInfrastructure::pop(const std::string& pop_id) const {
  auto it = pops_.find(pop_id);
  if (it == pops_.end()) throw Error(ErrorCode::ValidationError, fmt::format("unknown PoP '{}'", pop_id));
  return it->second;
}

NfviPop& NfvInfrastructure::pop(const std::string& pop_id) {
  return const_cast<NfviPop&>(std::as_const(*this).pop(pop_id));
}

const VnfInstance& NfvInfrastructure::vnf(const std::string& vnf_id) const {
  auto it = vnfs_.find(vnf_id);
  if (it == vnfs_.end()) throw Error(ErrorCode::ValidationFailed, fmt::format("unknown VNF '{}'", vnf_id));
  return it->second;
}

VnfInstance& NfvInfrastructure::vnf(const std::string& vnf_id) {
  return const_cast<VnfInstance&>(std::as_const(*this).vnf(vnf_id));
}

const VnfInstance* NfvInfrastructure::find_vnf(const std::string& vnf_id) const {
  auto it = vnfs_.find(vnf_id);
  return it == vnfs_.end() ? nullptr : &it->second;
}

namespace {

std::string pop_line(const NfviPop& p) {
  return fmt::format("pop {} capacity {}/{}/{} allocated {}/{}/{}\n", p.pop_id, p.capacity.vcpu,
                     p.capacity.memory_mib, p.capacity.storage_gib, p.allocated.vcpu, p.allocated.memory_mib,
                     p.allocated.storage_gib);
}

std::string vnf_line(const VnfInstance& v) {
  return fmt::format("vnf {} nf {} pop {} resources {}/{}/{} max {}/{}/{} state {}\n", v.vnf_id, v.hosted_nf, v.pop,
                     v.resources.vcpu, v.resources.memory_mib, v.resources.storage_gib, v.max_resources.vcpu,
                     v.max_resources.memory_mib, v.max_resources.storage_gib, to_string(v.lifecycle_state));
}

}  // namespace

std::string NfvInfrastructure::serialize_state() const {
  std::string out;
  for (const auto& [_, p] : pops_) out += pop_line(p);
  for (const auto& [_, v] : vnfs_) out += vnf_line(v);
  return out;
}

std::string NfvInfrastructure::serialize_vnf_and_pop(const std::string& vnf_id) const {
  const auto& v = vnf(vnf_id);
  return vnf_line(v) + pop_line(pop(v.pop));
}

std::vector<std::string> NfvInfrastructure::conservation_violations() const {
  std::map<std::string, ResourceProfile> hosted;
  for (const auto& [_, v] : vnfs_) hosted[v.pop] += v.resources;
  std::vector<std::string> out;
  for (const auto& [id, p] : pops_) {
    if (!p.allocated.non_negative() || !p.allocated.fits_within(p.capacity))
      out.push_back(fmt::format("PoP {} allocated {} exceeds capacity {}", id, p.allocated.str(), p.capacity.str()));
    if (hosted[id] != p.allocated)
      out.push_back(fmt::format("PoP {} allocated {} but hosts {}", id, p.allocated.str(), hosted[id].str()));
  }
  return out;
}

}  // namespace zsm
