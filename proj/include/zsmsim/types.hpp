#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace zsm {

using Tick = std::int64_t;

enum class DeploymentOption { Integrated1A, Integrated1B, Complementary2 };

std::string_view to_string(DeploymentOption option);
/// Accepts `1A`, `1B`, `2` (case-insensitive).
DeploymentOption parse_option(std::string_view text);

/// Vertical resource profile of a VNF or a PoP. Deltas may be negative.
struct ResourceProfile {
  std::int64_t vcpu = 0;
  std::int64_t memory_mib = 0;
  std::int64_t storage_gib = 0;

  friend bool operator==(const ResourceProfile&, const ResourceProfile&) = default;

  ResourceProfile& operator+=(const ResourceProfile& o) {
    vcpu += o.vcpu;
    memory_mib += o.memory_mib;
    storage_gib += o.storage_gib;
    return *this;
  }
  ResourceProfile& operator-=(const ResourceProfile& o) {
    vcpu -= o.vcpu;
    memory_mib -= o.memory_mib;
    storage_gib -= o.storage_gib;
    return *this;
  }
  friend ResourceProfile operator+(ResourceProfile a, const ResourceProfile& b) { return a += b; }
  friend ResourceProfile operator-(ResourceProfile a, const ResourceProfile& b) { return a -= b; }

  bool is_zero() const { return vcpu == 0 && memory_mib == 0 && storage_gib == 0; }
  bool non_negative() const { return vcpu >= 0 && memory_mib >= 0 && storage_gib >= 0; }
  /// Component-wise <=.
  bool fits_within(const ResourceProfile& bound) const {
    return vcpu <= bound.vcpu && memory_mib <= bound.memory_mib && storage_gib <= bound.storage_gib;
  }
  std::string str() const;
};

ResourceProfile component_min(const ResourceProfile& a, const ResourceProfile& b);

}  // namespace zsm
