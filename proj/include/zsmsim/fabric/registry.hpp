#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsmsim/fabric/domain.hpp"

namespace zsm {

/// Registry of management domains forming a forest.
class DomainRegistry {
 public:
  /// Registers a domain. Children listed in `spec` must already be registered
  /// and must not have a parent yet.
  std::string register_domain(ManagementDomain spec);

  /// Replaces `parent`'s children list. Keeps the forest property or throws
  /// CycleDetected / ForestViolation without modifying anything.
  const ManagementDomain& compose_e2e(const std::string& parent,
                                      const std::vector<std::string>& children);
  /// Appends one child to `parent` (same checks as compose_e2e).
  const ManagementDomain& attach_child(const std::string& parent, const std::string& child);

  const ManagementDomain& get(const std::string& domain_id) const;
  const ManagementDomain* find(const std::string& domain_id) const;
  bool contains(const std::string& domain_id) const { return domains_.count(domain_id) != 0; }
  std::optional<std::string> parent_of(const std::string& domain_id) const;

  /// Number of levels in the subtree rooted at `domain_id` (a leaf has depth 1).
  std::size_t depth(const std::string& domain_id) const;

  std::size_t size() const { return domains_.size(); }
  std::size_t count(DomainLevel level) const;
  /// Domain ids in registration order.
  const std::vector<std::string>& order() const { return order_; }

  std::string descriptor(const std::string& domain_id) const;
  std::uint64_t descriptor_hash(const std::string& domain_id) const;

  /// Full traversal check: every domain reachable from exactly one root path,
  /// no cycles, parent links consistent with children lists.
  bool is_forest() const;

 private:
  void check_composition(const std::string& parent, const std::vector<std::string>& children) const;

  std::map<std::string, ManagementDomain> domains_;
  std::map<std::string, std::string> parent_;
  std::vector<std::string> order_;
};

}  // namespace zsm
