#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zsmsim/payload.hpp"
#include "zsmsim/types.hpp"

namespace zsm {

struct NfviPop {
  std::string pop_id;
  ResourceProfile capacity;
  ResourceProfile allocated;

  ResourceProfile headroom() const { return capacity - allocated; }
};

enum class LifecycleState { Instantiated, Scaling, Failed };
std::string_view to_string(LifecycleState state);

/// Smallest profile a VNF may shrink to.
inline constexpr ResourceProfile kMinimumProfile{1, 0, 0};

struct VnfInstance {
  std::string vnf_id;
  std::string hosted_nf;
  std::string pop;
  ResourceProfile resources;
  LifecycleState lifecycle_state = LifecycleState::Instantiated;
  ResourceProfile max_resources;
};

enum class RequestOrigin { Nssmf, Adapter, OsMaNfvo };
std::string_view to_string(RequestOrigin origin);
RequestOrigin parse_origin(std::string_view text);

struct ScaleRequest {
  std::string request_id;
  std::string vnf_id;
  ResourceProfile delta;
  RequestOrigin origin = RequestOrigin::Nssmf;
  std::string correlation_id;
};

struct ScaleOutcome {
  std::string vnf_id;
  ResourceProfile requested;
  ResourceProfile granted;
  ResourceProfile resources;  // after scaling
  bool clamped = false;
};

/// ScaleRequest <-> payload (fields op, request_id, vnf, delta_*, origin).
Payload encode_scale_request(const ScaleRequest& request);
ScaleRequest decode_scale_request(const Payload& payload, std::string correlation_id = {});
Payload encode_scale_outcome(const ScaleOutcome& outcome);
ScaleOutcome decode_scale_outcome(const Payload& payload);

/// NFVI-PoPs and the VNFs they host. Allocation is additive per PoP with no
/// oversubscription.
class NfvInfrastructure {
 public:
  void add_pop(const std::string& pop_id, const ResourceProfile& capacity);
  /// Places a VNF; throws CapacityExceeded when the PoP cannot hold it.
  void add_vnf(VnfInstance vnf);

  const NfviPop& pop(const std::string& pop_id) const;
  NfviPop& pop(const std::string& pop_id);
  const VnfInstance& vnf(const std::string& vnf_id) const;
  VnfInstance& vnf(const std::string& vnf_id);
  const VnfInstance* find_vnf(const std::string& vnf_id) const;
  bool has_pop(const std::string& pop_id) const { return pops_.count(pop_id) != 0; }

  const std::map<std::string, NfviPop>& pops() const { return pops_; }
  const std::map<std::string, VnfInstance>& vnfs() const { return vnfs_; }

  /// Canonical text of every PoP and VNF (used for atomicity comparisons).
  std::string serialize_state() const;
  std::string serialize_vnf_and_pop(const std::string& vnf_id) const;

  /// Empty when every PoP satisfies sum(hosted) == allocated <= capacity;
  /// otherwise one line per violation.
  std::vector<std::string> conservation_violations() const;

 private:
  std::map<std::string, NfviPop> pops_;
  std::map<std::string, VnfInstance> vnfs_;
};

}  // namespace zsm
