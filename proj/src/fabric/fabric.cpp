#include "zsmsim/fabric/fabric.hpp"

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

MessageEnvelope make_envelope(const CallScope& scope, ServiceRef source, CapabilityRef target,
                              std::string step_label, Payload payload, std::string detail) {
  MessageEnvelope env;
  env.tick = scope.tick;
  env.source = std::move(source);
  env.target = std::move(target);
  env.correlation_id = scope.correlation_id;
  env.step_label = std::move(step_label);
  env.slice_id = scope.slice_id;
  env.payload = std::move(payload);
  env.detail = std::move(detail);
  return env;
}

void Fabric::bind(const CapabilityRef& target, Handler handler) {
  const auto& domain = registry_.get(target.domain);
  if (!domain.find_capability(target.capability))
    throw Error(ErrorCode::CapabilityNotFound,
                fmt::format("'{}' is not declared by domain '{}'", target.capability, target.domain));
  handlers_[target] = std::move(handler);
}

Payload Fabric::invoke(const MessageEnvelope& envelope) { return dispatch(envelope, false); }

void Fabric::grant_native(const ServiceRef& caller, std::string external_operation) {
  native_.emplace(caller, std::move(external_operation));
}

Payload Fabric::invoke_native(const MessageEnvelope& envelope) {
  const bool granted = native_.count({envelope.source, envelope.target.capability}) != 0;
  return dispatch(envelope, granted);
}

Payload Fabric::dispatch(const MessageEnvelope& env, bool allow_non_service_based) {
  const auto* provider = registry_.find(env.target.domain);
  const ServiceDescriptor* descriptor = provider ? provider->find_capability(env.target.capability) : nullptr;
  if (!descriptor)
    throw Error(ErrorCode::CapabilityNotFound, fmt::format("no capability '{}'", env.target.str()));
  if (!descriptor->service_based && !allow_non_service_based)
    throw Error(ErrorCode::NotServiceBased,
                fmt::format("'{}' is not service-based; an adapter or native binding is required",
                            env.target.str()));

  if (env.source.domain != env.target.domain) {
    if (auto gate = gates_.find(env.target.domain); gate != gates_.end()) gate->second(env.source, env.target.capability);
  }
  const auto* caller_domain = registry_.find(env.source.domain);
  const std::string tenant = caller_domain ? caller_domain->owner : std::string{};
  if (!provider->exposure_policy.allows(env.source.domain, tenant, env.target.capability)) {
    ++denied_;
    throw Error(ErrorCode::AccessDenied,
                fmt::format("'{}' may not invoke '{}'", env.source.str(), env.target.str()));
  }
  auto handler = handlers_.find(env.target);
  if (handler == handlers_.end())
    throw Error(ErrorCode::CapabilityNotFound, fmt::format("no handler bound for '{}'", env.target.str()));

  const auto index = trace_.append({env.tick, env.step_label, env.source.str(), env.target.str(),
                                    env.correlation_id, env.slice_id, env.detail});
  try {
    Payload response = handler->second(env);
    if (auto summary = response.find(kSummaryField)) {
      trace_.annotate(index, *summary);
      response.fields().erase(kSummaryField);
    }
    return response;
  } catch (Error& e) {
    if (e.origin().empty()) e.set_origin(descriptor->service);
    trace_.annotate(index, fmt::format("error={}", to_string(e.code())));
    throw;
  }
}

void Fabric::register_adapter(AdapterBinding binding, const std::string& adapter_domain,
                              std::string adapter_service) {
  const std::string id = binding.adapter_id;
  CapabilityRef zsm_side{adapter_domain, binding.zsm_capability};
  ServiceRef service{adapter_domain, std::move(adapter_service)};
  adapters_[id] = AdapterEntry{std::move(binding), service};
  bind(zsm_side, [this, id](const MessageEnvelope& env) { return adapt_invoke(id, env); });
}

const AdapterBinding& Fabric::adapter(const std::string& adapter_id) const {
  auto it = adapters_.find(adapter_id);
  if (it == adapters_.end()) throw Error(ErrorCode::UnknownAdapter, fmt::format("no adapter '{}'", adapter_id));
  return it->second.binding;
}

Payload Fabric::adapt_invoke(const std::string& adapter_id, const MessageEnvelope& env) {
  auto it = adapters_.find(adapter_id);
  if (it == adapters_.end()) throw Error(ErrorCode::UnknownAdapter, fmt::format("no adapter '{}'", adapter_id));
  const auto& [binding, service] = it->second;

  MessageEnvelope outbound = env;
  outbound.source = service;
  outbound.target = {binding.external_domain, binding.external_operation};
  outbound.step_label.clear();
  outbound.payload = binding.codec.translate(env.payload);
  outbound.detail = fmt::format("translate {} -> {}", binding.zsm_capability, binding.external_operation);
  Payload external_response = dispatch(outbound, true);
  return binding.codec.translate_back(external_response);
}

void Fabric::set_ingress_gate(const std::string& domain_id, IngressGate gate) {
  gates_[domain_id] = std::move(gate);
}

bool Fabric::exposed_to(const std::string& consumer_domain, const std::string& capability_pattern) const {
  const auto* consumer = registry_.find(consumer_domain);
  const std::string tenant = consumer ? consumer->owner : std::string{};
  for (const auto& id : registry_.order()) {
    const auto& domain = registry_.get(id);
    for (const auto& s : domain.services) {
      if (glob_match(capability_pattern, s.capability) &&
          domain.exposure_policy.allows(consumer_domain, tenant, s.capability))
        return true;
    }
  }
  return false;
}

std::string Fabric::subscribe(const ServiceRef& subscriber, const std::string& topic_pattern,
                              const CapabilityRef& deliver_to) {
  for (const auto& s : subscriptions_)
    if (s.subscriber == subscriber && s.topic_pattern == topic_pattern) return s.id;
  std::string id = fmt::format("sub-{}", subscriptions_.size() + 1);
  subscriptions_.push_back({id, subscriber, topic_pattern, deliver_to});
  return id;
}

void Fabric::bind_topic(const CapabilityRef& topic) {
  bind(topic, [this](const MessageEnvelope& env) { return fan_out(env); });
}

Payload Fabric::fan_out(const MessageEnvelope& env) {
  std::size_t delivered = 0;
  for (const auto& s : subscriptions_) {
    if (!glob_match(s.topic_pattern, env.target.capability)) continue;
    MessageEnvelope note = env;
    note.target = s.deliver_to;
    note.correlation_id = env.correlation_id + ".ntf";
    note.step_label.clear();
    note.detail = fmt::format("notify {} topic={}", s.id, env.target.capability);
    try {
      invoke(note);
      ++delivered;
    } catch (const Error&) {
      // a failing subscriber does not stall the publisher
    }
  }
  Payload response;
  response.set(kSummaryField, fmt::format("delivered={}", delivered));
  return response;
}

}  // namespace zsm
