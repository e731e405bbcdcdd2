#include "zsmsim/mgmt3gpp/management.hpp"

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

namespace {

std::string request_text(const ScaleRequest& r) {
  return fmt::format("request={} vnf={} delta_vcpu={}", r.request_id, r.vnf_id, r.delta.vcpu);
}

std::string outcome_text(const ScaleOutcome& o) {
  return fmt::format("granted_vcpu={} vcpu={}", o.granted.vcpu, o.resources.vcpu);
}

std::vector<std::pair<std::string, std::string>> scale_fields(std::string_view flavor) {
  std::vector<std::pair<std::string, std::string>> m{
      {"op", "operation"},
      {"request_id", "requestId"},
      {"vnf", "vnfInstanceId"},
      {"delta_vcpu", "numberOfVcpu"},
      {"delta_memory", "virtualMemSizeMib"},
      {"delta_storage", "sizeOfStorageGib"},
      {"origin", "requestOrigin"},
      {"requested_vcpu", "requestedVcpu"},
      {"requested_memory", "requestedMemMib"},
      {"requested_storage", "requestedStorageGib"},
      {"granted_vcpu", "grantedVcpu"},
      {"granted_memory", "grantedMemMib"},
      {"granted_storage", "grantedStorageGib"},
      {"vcpu", "currentVcpu"},
      {"memory", "currentMemMib"},
      {"storage", "currentStorageGib"},
      {"clamped", "partialGrant"},
  };
  if (flavor == "nsmf") m.emplace_back("slice", "nsiId");
  return m;
}

}  // namespace

FieldCodec os_ma_nfvo_codec() { return FieldCodec(scale_fields("nfvo")); }
FieldCodec nsmf_exposure_codec() { return FieldCodec(scale_fields("nsmf")); }

Nssmf::Nssmf(Fabric& fabric, NssmfConfig config) : fabric_(fabric), config_(std::move(config)) {}

void Nssmf::set_frozen(const std::string& subnet_id, bool frozen) {
  if (frozen)
    frozen_.insert(subnet_id);
  else
    frozen_.erase(subnet_id);
}

ScaleOutcome Nssmf::provision_subnet(const std::string& subnet_id, const ScaleRequest& action,
                                     const CallScope& scope) {
  if (!managed_.count(subnet_id))
    throw Error(ErrorCode::UnknownSubnet, fmt::format("subnet '{}' is not managed by this NSSMF", subnet_id),
                config_.service.service);
  if (frozen_.count(subnet_id))
    throw Error(ErrorCode::NotPossible, fmt::format("subnet '{}' is frozen", subnet_id), config_.service.service);

  ScaleRequest forwarded = action;
  Payload response;
  if (config_.binding == NfvoBinding::IntegratedInvoke) {
    forwarded.origin = RequestOrigin::Nssmf;
    response = fabric_.invoke(make_envelope(scope, config_.service, config_.nfvo_target(action.vnf_id),
                                            config_.dispatch_label, encode_scale_request(forwarded),
                                            request_text(forwarded)));
  } else if (config_.adapter) {
    forwarded.origin = RequestOrigin::Adapter;
    response = fabric_.invoke(make_envelope(scope, config_.service, *config_.adapter, config_.dispatch_label,
                                            encode_scale_request(forwarded), request_text(forwarded)));
  } else {
    forwarded.origin = RequestOrigin::OsMaNfvo;
    Payload request = encode_scale_request(forwarded);
    if (config_.native_codec) request = config_.native_codec->translate(request);
    response = fabric_.invoke_native(make_envelope(scope, config_.service, config_.nfvo_target(action.vnf_id),
                                                   config_.dispatch_label, std::move(request),
                                                   request_text(forwarded)));
    if (config_.native_codec) response = config_.native_codec->translate_back(response);
  }
  return decode_scale_outcome(response);
}

void Nssmf::bind_handlers() {
  const auto& domain = config_.service.domain;
  fabric_.bind({domain, kNssmfCapability}, [this](const MessageEnvelope& env) {
    const auto request = decode_scale_request(env.payload, env.correlation_id);
    const CallScope scope{env.tick, env.correlation_id, env.slice_id};
    const auto outcome = provision_subnet(env.payload.str("subnet"), request, scope);
    Payload response = encode_scale_outcome(outcome);
    response.set(kSummaryField, outcome_text(outcome));
    return response;
  });
  fabric_.bind({domain, kNssmfFaultCapability}, [this](const MessageEnvelope&) {
    ++fault_acks_;
    Payload response;
    response.set(kSummaryField, "acknowledged");
    return response;
  });
}

Nsmf::Nsmf(Fabric& fabric, NsmfConfig config) : fabric_(fabric), config_(std::move(config)) {}

ScaleOutcome Nsmf::provision_slice(const std::string& slice_id, const ScaleRequest& action, const CallScope& scope) {
  if (!managed_.count(slice_id))
    throw Error(ErrorCode::UnknownSlice, fmt::format("slice '{}' is not managed by this NSMF", slice_id),
                config_.service.service);
  Payload request = encode_scale_request(action);
  request.set("subnet", slice_id);
  const auto response = fabric_.invoke(
      make_envelope(scope, config_.service, config_.nssmf, config_.subnet_label, std::move(request),
                    fmt::format("subnet={} {}", slice_id, request_text(action))));
  return decode_scale_outcome(response);
}

std::string Nsmf::subscribe_analytics(const std::string& topic) {
  if (!config_.external_exposure || !fabric_.exposed_to(config_.service.domain, topic))
    throw Error(ErrorCode::NotExposed, fmt::format("'{}' is not exposed to '{}'", topic, config_.service.str()),
                config_.service.service);
  return fabric_.subscribe(config_.service, topic, {config_.service.domain, kNsmfNotifyCapability});
}

void Nsmf::bind_handlers() {
  const auto& domain = config_.service.domain;
  fabric_.bind({domain, kNsmfCapability}, [this](const MessageEnvelope& env) {
    const Payload in = config_.exposure_codec ? config_.exposure_codec->translate_back(env.payload) : env.payload;
    const auto request = decode_scale_request(in, env.correlation_id);
    const CallScope scope{env.tick, env.correlation_id, env.slice_id};
    const auto outcome = provision_slice(in.str("slice"), request, scope);
    Payload response = encode_scale_outcome(outcome);
    if (config_.exposure_codec) response = config_.exposure_codec->translate(response);
    response.set(kSummaryField, outcome_text(outcome));
    return response;
  });
  fabric_.bind({domain, kNsmfNotifyCapability}, [this](const MessageEnvelope& env) {
    ++notifications_;
    const CallScope scope{env.tick, env.correlation_id, env.slice_id};
    CapabilityRef fault{config_.nssmf.domain, kNssmfFaultCapability};
    Payload ack;
    ack.set("event", env.payload.find("event").value_or(""));
    fabric_.invoke(make_envelope(scope, config_.service, fault, "", std::move(ack),
                                 fmt::format("ack event={}", env.payload.find("event").value_or("-"))));
    Payload response;
    response.set(kSummaryField, "notified");
    return response;
  });
}

bool Egmf::allows(const std::string& capability, const std::string& consumer_domain) const {
  for (const auto& [cap_pattern, consumer_pattern] : policy_.exposed)
    if (glob_match(cap_pattern, capability) && glob_match(consumer_pattern, consumer_domain)) return true;
  return false;
}

void Egmf::install(Fabric& fabric, const std::string& domain_id) const {
  fabric.set_ingress_gate(domain_id, [policy = *this](const ServiceRef& caller, const std::string& capability) {
    if (!policy.allows(capability, caller.domain))
      throw Error(ErrorCode::NotExposed,
                  fmt::format("EGMF does not expose '{}' to '{}'", capability, caller.domain), "3gpp.egmf");
  });
}

}  // namespace zsm
