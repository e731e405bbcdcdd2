#include "zsmsim/fabric/registry.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

namespace {

void validate_services(ManagementDomain& spec) {
  std::set<std::string> seen;
  for (auto& s : spec.services) {
    if (s.provider_domain.empty()) s.provider_domain = spec.domain_id;
    if (s.provider_domain != spec.domain_id)
      throw Error(ErrorCode::InvalidDomain,
                  fmt::format("descriptor '{}' names provider '{}' inside domain '{}'", s.capability,
                              s.provider_domain, spec.domain_id));
    if (!seen.insert(s.capability).second)
      throw Error(ErrorCode::InvalidDomain,
                  fmt::format("capability '{}' declared twice in '{}'", s.capability, spec.domain_id));
    if (!s.service_based && !is_mano_capability(s.capability))
      throw Error(ErrorCode::InvalidDomain,
                  fmt::format("only MANO endpoints may be non-service-based ('{}')", s.capability));
    if (spec.level == DomainLevel::Virtualization && !is_mano_capability(s.capability))
      throw Error(ErrorCode::InvalidDomain,
                  fmt::format("Virtualization domain '{}' cannot carry '{}'", spec.domain_id, s.capability));
  }
  std::sort(spec.services.begin(), spec.services.end(),
            [](const auto& a, const auto& b) { return a.capability < b.capability; });
}

}  // namespace

std::string DomainRegistry::register_domain(ManagementDomain spec) {
  if (spec.domain_id.empty()) throw Error(ErrorCode::InvalidDomain, "empty domain id");
  if (contains(spec.domain_id))
    throw Error(ErrorCode::DuplicateDomain, fmt::format("domain '{}' already registered", spec.domain_id));
  if (spec.level == DomainLevel::SliceSpecific && spec.owner.empty())
    throw Error(ErrorCode::InvalidDomain,
                fmt::format("SliceSpecific domain '{}' needs an owner tenant", spec.domain_id));
  std::set<std::string> distinct;
  for (const auto& child : spec.children) {
    if (!contains(child))
      throw Error(ErrorCode::UnknownChild, fmt::format("child '{}' is not registered", child));
    if (parent_.count(child))
      throw Error(ErrorCode::ForestViolation,
                  fmt::format("child '{}' already belongs to '{}'", child, parent_.at(child)));
    if (!distinct.insert(child).second)
      throw Error(ErrorCode::ForestViolation, fmt::format("child '{}' listed twice", child));
  }
  validate_services(spec);

  const std::string id = spec.domain_id;
  for (const auto& child : spec.children) parent_[child] = id;
  order_.push_back(id);
  domains_.emplace(id, std::move(spec));
  return id;
}

void DomainRegistry::check_composition(const std::string& parent,
                                       const std::vector<std::string>& children) const {
  if (!contains(parent)) throw Error(ErrorCode::UnknownDomain, fmt::format("unknown domain '{}'", parent));
  std::set<std::string> distinct;
  for (const auto& child : children) {
    if (!contains(child))
      throw Error(ErrorCode::UnknownChild, fmt::format("child '{}' is not registered", child));
    if (!distinct.insert(child).second)
      throw Error(ErrorCode::ForestViolation, fmt::format("child '{}' listed twice", child));
    // the child must not be the parent itself or any of its ancestors
    for (std::optional<std::string> cur = parent; cur; cur = parent_of(*cur)) {
      if (*cur == child)
        throw Error(ErrorCode::CycleDetected,
                    fmt::format("composing '{}' under '{}' creates a cycle", child, parent));
    }
    auto it = parent_.find(child);
    if (it != parent_.end() && it->second != parent)
      throw Error(ErrorCode::ForestViolation,
                  fmt::format("child '{}' already belongs to '{}'", child, it->second));
  }
}

const ManagementDomain& DomainRegistry::compose_e2e(const std::string& parent,
                                                    const std::vector<std::string>& children) {
  check_composition(parent, children);
  auto& domain = domains_.at(parent);
  for (const auto& old : domain.children) parent_.erase(old);
  domain.children = children;
  for (const auto& child : children) parent_[child] = parent;
  return domain;
}

const ManagementDomain& DomainRegistry::attach_child(const std::string& parent, const std::string& child) {
  if (!contains(parent)) throw Error(ErrorCode::UnknownDomain, fmt::format("unknown domain '{}'", parent));
  auto children = domains_.at(parent).children;
  children.push_back(child);
  return compose_e2e(parent, children);
}

const ManagementDomain& DomainRegistry::get(const std::string& domain_id) const {
  auto it = domains_.find(domain_id);
  if (it == domains_.end())
    throw Error(ErrorCode::UnknownDomain, fmt::format("unknown domain '{}'", domain_id));
  return it->second;
}

const ManagementDomain* DomainRegistry::find(const std::string& domain_id) const {
  auto it = domains_.find(domain_id);
  return it == domains_.end() ? nullptr : &it->second;
}

std::optional<std::string> DomainRegistry::parent_of(const std::string& domain_id) const {
  auto it = parent_.find(domain_id);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::size_t DomainRegistry::depth(const std::string& domain_id) const {
  const auto& domain = get(domain_id);
  std::size_t deepest = 0;
  for (const auto& child : domain.children) deepest = std::max(deepest, depth(child));
  return deepest + 1;
}

std::size_t DomainRegistry::count(DomainLevel level) const {
  return static_cast<std::size_t>(std::count_if(domains_.begin(), domains_.end(),
                                                [&](const auto& kv) { return kv.second.level == level; }));
}

std::string DomainRegistry::descriptor(const std::string& domain_id) const {
  return serialize_descriptor(get(domain_id));
}

std::uint64_t DomainRegistry::descriptor_hash(const std::string& domain_id) const {
  return std::hash<std::string>{}(descriptor(domain_id));
}

bool DomainRegistry::is_forest() const {
  std::map<std::string, std::string> listed_parent;
  for (const auto& [id, domain] : domains_) {
    for (const auto& child : domain.children) {
      if (!contains(child)) return false;
      if (!listed_parent.emplace(child, id).second) return false;  // two parents
    }
  }
  if (listed_parent != parent_) return false;
  // every upward walk terminates at a root
  for (const auto& [id, _] : domains_) {
    std::set<std::string> seen;
    for (std::optional<std::string> cur = id; cur; cur = parent_of(*cur))
      if (!seen.insert(*cur).second) return false;
  }
  return true;
}

}  // namespace zsm
