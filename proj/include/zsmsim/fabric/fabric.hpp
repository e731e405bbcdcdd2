#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zsmsim/fabric/adapter.hpp"
#include "zsmsim/fabric/registry.hpp"
#include "zsmsim/fabric/trace.hpp"
#include "zsmsim/payload.hpp"
#include "zsmsim/types.hpp"

namespace zsm {

struct ServiceRef {
  std::string domain;
  std::string service;
  std::string str() const { return domain + "/" + service; }
  friend auto operator<=>(const ServiceRef&, const ServiceRef&) = default;
};

struct CapabilityRef {
  std::string domain;
  std::string capability;
  std::string str() const { return domain + "/" + capability; }
  friend auto operator<=>(const CapabilityRef&, const CapabilityRef&) = default;
};

/// Timeline position and correlation shared by the calls of one chain.
struct CallScope {
  Tick tick = 0;
  std::string correlation_id;
  std::string slice_id;
};

struct MessageEnvelope {
  Tick tick = 0;
  ServiceRef source;
  CapabilityRef target;
  std::string correlation_id;
  std::string step_label;
  std::string slice_id;
  Payload payload;
  std::string detail;  // request summary written to the trace record
};

MessageEnvelope make_envelope(const CallScope& scope, ServiceRef source, CapabilityRef target,
                              std::string step_label, Payload payload, std::string detail);

/// Handlers may put a short response summary under this key; the fabric
/// moves it into the trace record and strips it from the returned payload.
inline constexpr const char* kSummaryField = "~summary";

using Handler = std::function<Payload(const MessageEnvelope&)>;
/// Checks an inbound call from another domain; throws to reject it before the
/// provider's handler (and before any trace record).
using IngressGate = std::function<void(const ServiceRef& caller, const std::string& capability)>;

/// Service-based integration fabric: domain registry, capability handlers,
/// exposure governance, adapters to non-service-based systems, topic
/// subscriptions and the trace.
class Fabric {
 public:
  DomainRegistry& registry() { return registry_; }
  const DomainRegistry& registry() const { return registry_; }
  Trace& trace() { return trace_; }
  const Trace& trace() const { return trace_; }

  /// Binds a handler to a capability declared by the domain's descriptors.
  void bind(const CapabilityRef& target, Handler handler);
  bool is_bound(const CapabilityRef& target) const { return handlers_.count(target) != 0; }

  /// Service-based invocation. Throws CapabilityNotFound, NotServiceBased or
  /// AccessDenied before any handler runs; appends exactly one record when
  /// the handler runs.
  Payload invoke(const MessageEnvelope& envelope);

  /// Lets `caller` reach one non-service-based operation natively (e.g. an
  /// NSSMF holding an Os-Ma-nfvo client binding).
  void grant_native(const ServiceRef& caller, std::string external_operation);
  /// Like invoke, but the target may be non-service-based when the caller
  /// holds a native binding for it.
  Payload invoke_native(const MessageEnvelope& envelope);

  /// Registers an adapter and binds its ZSM-side capability, which must be
  /// declared by `adapter_domain`.
  void register_adapter(AdapterBinding binding, const std::string& adapter_domain,
                        std::string adapter_service);
  const AdapterBinding& adapter(const std::string& adapter_id) const;
  /// Translates the request, calls the external operation (one trace record,
  /// source = the adapter service) and translates the response back.
  Payload adapt_invoke(const std::string& adapter_id, const MessageEnvelope& envelope);

  void set_ingress_gate(const std::string& domain_id, IngressGate gate);

  /// True when some registered capability matching `capability_pattern` is
  /// exposed to `consumer_domain`.
  bool exposed_to(const std::string& consumer_domain, const std::string& capability_pattern) const;

  /// Topic subscription; idempotent per (subscriber, topic). Returns the id.
  std::string subscribe(const ServiceRef& subscriber, const std::string& topic_pattern,
                        const CapabilityRef& deliver_to);
  /// Binds `topic` as a publish point fanning out to matching subscriptions.
  void bind_topic(const CapabilityRef& topic);

  std::size_t denied_count() const { return denied_; }

 private:
  struct Subscription {
    std::string id;
    ServiceRef subscriber;
    std::string topic_pattern;
    CapabilityRef deliver_to;
  };
  struct AdapterEntry {
    AdapterBinding binding;
    ServiceRef service;
  };

  Payload dispatch(const MessageEnvelope& envelope, bool allow_non_service_based);
  Payload fan_out(const MessageEnvelope& envelope);

  DomainRegistry registry_;
  Trace trace_;
  std::map<CapabilityRef, Handler> handlers_;
  std::map<std::string, IngressGate> gates_;
  std::set<std::pair<ServiceRef, std::string>> native_;
  std::map<std::string, AdapterEntry> adapters_;
  std::vector<Subscription> subscriptions_;
  std::size_t denied_ = 0;
};

}  // namespace zsm
