#include "zsmsim/fabric/domain.hpp"

#include <fnmatch.h>

#include <fmt/format.h>

namespace zsm {

std::string_view to_string(DomainLevel level) {
  switch (level) {
    case DomainLevel::E2EService: return "E2EService";
    case DomainLevel::SliceSpecific: return "SliceSpecific";
    case DomainLevel::SharedNFs: return "SharedNFs";
    case DomainLevel::OverarchingNFs: return "OverarchingNFs";
    case DomainLevel::Virtualization: return "Virtualization";
    case DomainLevel::External3GPP: return "External3GPP";
  }
  return "?";
}

bool glob_match(std::string_view pattern, std::string_view text) {
  return ::fnmatch(std::string(pattern).c_str(), std::string(text).c_str(), 0) == 0;
}

bool is_mano_capability(std::string_view capability) {
  return capability.starts_with("mano.") || capability.starts_with("Os-Ma-nfvo.");
}

bool ExposurePolicy::allows(std::string_view consumer_domain, std::string_view consumer_tenant,
                            std::string_view capability) const {
  for (const auto& rule : rules) {
    std::string_view consumer =
        rule.consumer_kind == ConsumerKind::Domain ? consumer_domain : consumer_tenant;
    if (consumer.empty()) continue;
    if (glob_match(rule.consumer_pattern, consumer) && glob_match(rule.capability_pattern, capability))
      return rule.effect == RuleEffect::Allow;
  }
  return false;
}

ExposurePolicy& ExposurePolicy::allow_domain(std::string domain_pattern, std::string capability_pattern) {
  rules.push_back({ConsumerKind::Domain, std::move(domain_pattern), std::move(capability_pattern),
                   RuleEffect::Allow});
  return *this;
}

ExposurePolicy& ExposurePolicy::allow_tenant(std::string tenant_pattern, std::string capability_pattern) {
  rules.push_back({ConsumerKind::Tenant, std::move(tenant_pattern), std::move(capability_pattern),
                   RuleEffect::Allow});
  return *this;
}

ExposurePolicy& ExposurePolicy::deny_domain(std::string domain_pattern, std::string capability_pattern) {
  rules.push_back({ConsumerKind::Domain, std::move(domain_pattern), std::move(capability_pattern),
                   RuleEffect::Deny});
  return *this;
}

const ServiceDescriptor* ManagementDomain::find_capability(std::string_view capability) const {
  for (const auto& s : services)
    if (s.capability == capability) return &s;
  return nullptr;
}

std::string serialize_descriptor(const ManagementDomain& domain) {
  std::string out = fmt::format("domain {}\nlevel {}\nowner {}\n", domain.domain_id,
                                to_string(domain.level), domain.owner);
  for (const auto& s : domain.services)
    out += fmt::format("service {} {} {} {}\n", s.capability, s.service, s.provider_domain,
                       s.service_based ? "service-based" : "non-service-based");
  for (const auto& r : domain.exposure_policy.rules)
    out += fmt::format("rule {} {} {} {}\n", r.consumer_kind == ConsumerKind::Domain ? "domain" : "tenant",
                       r.consumer_pattern, r.capability_pattern,
                       r.effect == RuleEffect::Allow ? "allow" : "deny");
  out += "default deny\n";
  return out;
}

}  // namespace zsm
