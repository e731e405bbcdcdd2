#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zsmsim/fabric/registry.hpp"

namespace zsm {

enum class NfType { AMF, NRF, SMF, PCF, NWDAF, NSSF, UDM, UDR, UDSF };
enum class Sharing { Dedicated, Shared, Overarching };

std::string_view to_string(NfType type);
std::string_view to_string(Sharing sharing);
NfType parse_nf_type(std::string_view text);
Sharing parse_sharing(std::string_view text);

/// Sharing class of a control-plane NF. AMF/NRF are shared, SMF/PCF/NWDAF
/// dedicated and NSSF overarching regardless of the hint; UDM, UDR and UDSF
/// follow the deployment hint and throw HintRequired without one.
Sharing classify_nf(NfType type, std::optional<Sharing> deployment_hint = std::nullopt);

struct NetworkFunction {
  std::string nf_id;
  NfType nf_type = NfType::SMF;
  Sharing sharing = Sharing::Dedicated;
  std::string hosting_vnf;
  bool mgmt_interface = true;
};

struct NfTemplateEntry {
  NfType type = NfType::SMF;
  std::optional<Sharing> hint;
  bool mgmt_interface = true;
};

struct SliceInstance {
  std::string slice_id;
  std::string owner;
  std::set<std::string> dedicated_nfs;
  std::set<std::string> shared_nfs;
  std::set<std::string> overarching_nfs;
  std::string mgmt_domain;

  bool contains(const std::string& nf_id) const {
    return dedicated_nfs.count(nf_id) || shared_nfs.count(nf_id) || overarching_nfs.count(nf_id);
  }
};

struct InstantiationResult {
  SliceInstance slice;
  std::vector<std::string> created_nfs;
  std::vector<std::string> created_domains;
};

/// Builds the descriptor set and exposure policy of a freshly created domain.
using DomainFactory =
    std::function<ManagementDomain(DomainLevel level, const std::string& domain_id, const std::string& owner)>;

/// Owns slice instances and control-plane NFs. Dedicated NFs are created per
/// slice; Shared and Overarching NFs are singletons reused across slices. Each
/// slice gets its own SliceSpecific domain under the CN E2E domain, while the
/// SharedNFs / OverarchingNFs domains are created once, on first need.
class SliceCatalog {
 public:
  SliceCatalog(DomainRegistry& registry, std::string cn_domain, DomainFactory factory);

  InstantiationResult instantiate_slice(const std::vector<NfTemplateEntry>& nf_template,
                                        const std::string& owner);

  const SliceInstance& slice(const std::string& slice_id) const;
  const NetworkFunction& nf(const std::string& nf_id) const;
  const NetworkFunction* find_nf(const std::string& nf_id) const;
  const std::map<std::string, SliceInstance>& slices() const { return slices_; }
  const std::map<std::string, NetworkFunction>& nfs() const { return nfs_; }
  /// Slice ids in instantiation order.
  const std::vector<std::string>& slice_order() const { return slice_order_; }

  /// Management domain responsible for an NF (its slice's domain when
  /// dedicated, the shared or overarching domain otherwise).
  std::string managing_domain(const std::string& nf_id) const;
  /// Slice owning a dedicated NF; empty for shared/overarching NFs.
  std::string owning_slice(const std::string& nf_id) const;
  /// First NF of `type` serving the slice (dedicated, shared or overarching).
  std::optional<std::string> nf_of_type(const std::string& slice_id, NfType type) const;

  const std::string& shared_domain() const { return shared_domain_; }
  const std::string& overarching_domain() const { return overarching_domain_; }

  static constexpr std::string_view kSharedDomainId = "cn-shared";
  static constexpr std::string_view kOverarchingDomainId = "cn-overarching";

 private:
  std::string ensure_group_domain(DomainLevel level, std::vector<std::string>& created);

  DomainRegistry& registry_;
  std::string cn_domain_;
  DomainFactory factory_;
  std::map<std::string, SliceInstance> slices_;
  std::vector<std::string> slice_order_;
  std::map<std::string, NetworkFunction> nfs_;
  std::map<std::string, std::string> dedicated_owner_;
  std::string shared_domain_;
  std::string overarching_domain_;
};

/// Lower-case NF id stem, e.g. "smf" for SMF.
std::string nf_stem(NfType type);

}  // namespace zsm
