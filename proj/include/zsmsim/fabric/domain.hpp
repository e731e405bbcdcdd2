#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zsm {

enum class DomainLevel {
  E2EService,
  SliceSpecific,
  SharedNFs,
  OverarchingNFs,
  Virtualization,
  External3GPP,
};

std::string_view to_string(DomainLevel level);

/// One capability offered by a domain. `service` is the provider service kind
/// that shows up as the source of outgoing calls (e.g. capability
/// `mano.nfvo.scale_vnf` is provided by service `mano.nfvo`).
struct ServiceDescriptor {
  std::string capability;
  std::string service;
  std::string provider_domain;
  bool service_based = true;

  friend bool operator==(const ServiceDescriptor&, const ServiceDescriptor&) = default;
};

enum class ConsumerKind { Domain, Tenant };
enum class RuleEffect { Allow, Deny };

struct ExposureRule {
  ConsumerKind consumer_kind = ConsumerKind::Domain;
  std::string consumer_pattern;    // glob over domain id or tenant
  std::string capability_pattern;  // glob over capability name
  RuleEffect effect = RuleEffect::Allow;

  friend bool operator==(const ExposureRule&, const ExposureRule&) = default;
};

/// First-match rule list; no match means deny.
struct ExposurePolicy {
  std::vector<ExposureRule> rules;

  bool allows(std::string_view consumer_domain, std::string_view consumer_tenant,
              std::string_view capability) const;

  ExposurePolicy& allow_domain(std::string domain_pattern, std::string capability_pattern);
  ExposurePolicy& allow_tenant(std::string tenant_pattern, std::string capability_pattern);
  ExposurePolicy& deny_domain(std::string domain_pattern, std::string capability_pattern);

  friend bool operator==(const ExposurePolicy&, const ExposurePolicy&) = default;
};

struct ManagementDomain {
  std::string domain_id;
  DomainLevel level = DomainLevel::E2EService;
  std::string owner;
  std::vector<ServiceDescriptor> services;
  std::vector<std::string> children;
  ExposurePolicy exposure_policy;

  const ServiceDescriptor* find_capability(std::string_view capability) const;
};

/// Glob match (`*`, `?`, `[...]`) over whole strings.
bool glob_match(std::string_view pattern, std::string_view text);

/// True for capabilities a Virtualization domain may carry.
bool is_mano_capability(std::string_view capability);

/// Canonical descriptor text: identity, services and exposure policy.
/// Composition (`children`) is registry topology and is deliberately excluded
/// so that growing the tree never rewrites an existing domain's descriptor.
std::string serialize_descriptor(const ManagementDomain& domain);

}  // namespace zsm
