#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zsmsim/fabric/fabric.hpp"
#include "zsmsim/infra/nfv.hpp"

namespace zsm {

/// Os-Ma-nfvo ScaleVnf field names for ScaleRequest / ScaleOutcome payloads.
FieldCodec os_ma_nfvo_codec();
/// Exposed NSMF slice-provisioning field names.
FieldCodec nsmf_exposure_codec();

enum class NfvoBinding { IntegratedInvoke, OsMaNfvo };

inline constexpr const char* kNssmfCapability = "3gpp.nssmf.subnet_provisioning";
inline constexpr const char* kNssmfFaultCapability = "3gpp.nssmf.fault_management";
inline constexpr const char* kNsmfCapability = "3gpp.nsmf.slice_provisioning";
inline constexpr const char* kNsmfNotifyCapability = "3gpp.nsmf.notify";

struct NssmfConfig {
  ServiceRef service;  // e.g. e2e-cn/3gpp.nssmf
  NfvoBinding binding = NfvoBinding::IntegratedInvoke;
  /// ZSM adapter fronting a standalone NFVO (integrated NSSMF, Option 1B).
  std::optional<CapabilityRef> adapter;
  /// NFVO endpoint for a VNF: `mano.nfvo.scale_vnf` of the VNF's
  /// Virtualization domain, or the standalone `Os-Ma-nfvo.ScaleVnf`.
  std::function<CapabilityRef(const std::string& vnf_id)> nfvo_target;
  std::string dispatch_label = "7";
  /// Field map of the native Os-Ma-nfvo client binding (OsMaNfvo without adapter).
  std::optional<FieldCodec> native_codec;
};

/// Network Slice Subnet Management Function.
class Nssmf {
 public:
  Nssmf(Fabric& fabric, NssmfConfig config);

  void manage_subnet(const std::string& subnet_id) { managed_.insert(subnet_id); }
  /// A frozen subnet makes every scaling "not possible" at NSSMF level.
  void set_frozen(const std::string& subnet_id, bool frozen);
  const std::set<std::string>& managed_subnets() const { return managed_; }
  NfvoBinding binding() const { return config_.binding; }
  const ServiceRef& service() const { return config_.service; }

  /// Possibility check, then dispatch to the NFVO through the configured
  /// binding. UnknownSubnet / NotPossible are raised before any NFVO hop.
  ScaleOutcome provision_subnet(const std::string& subnet_id, const ScaleRequest& action, const CallScope& scope);

  /// Binds subnet provisioning and fault management in the NSSMF's domain.
  void bind_handlers();

  std::size_t fault_acks() const { return fault_acks_; }

 private:
  Fabric& fabric_;
  NssmfConfig config_;
  std::set<std::string> managed_;
  std::set<std::string> frozen_;
  std::size_t fault_acks_ = 0;
};

struct NsmfConfig {
  ServiceRef service;  // e.g. 3gpp-ms/3gpp.nsmf
  CapabilityRef nssmf;
  std::string subnet_label = "7";
  /// Exposure of ZSM analytics to the NSMF is only configured in the
  /// complementary deployment.
  bool external_exposure = false;
  /// Field names the provisioning service speaks towards external callers.
  std::optional<FieldCodec> exposure_codec;
};

/// Network Slice Management Function.
class Nsmf {
 public:
  Nsmf(Fabric& fabric, NsmfConfig config);

  void manage_slice(const std::string& slice_id) { managed_.insert(slice_id); }
  const std::set<std::string>& managed_slices() const { return managed_; }

  /// Delegates to the NSSMF owning the slice's CN subnet (subnet id = slice id).
  ScaleOutcome provision_slice(const std::string& slice_id, const ScaleRequest& action, const CallScope& scope);

  /// Subscribes to ZSM analytics notifications matching `topic`.
  /// Idempotent: the same topic returns the same id. NotExposed unless ZSM
  /// exposes a matching capability to this NSMF.
  std::string subscribe_analytics(const std::string& topic);

  void bind_handlers();

  std::size_t notifications() const { return notifications_; }

 private:
  Fabric& fabric_;
  NsmfConfig config_;
  std::set<std::string> managed_;
  std::size_t notifications_ = 0;
};

/// (capability pattern, consumer domain pattern) pairs the 3GPP management
/// system exposes to external systems.
struct EgmfPolicy {
  std::vector<std::pair<std::string, std::string>> exposed;
};

/// Exposure Governance Management Function: rejects external invocations of
/// unexposed capabilities before they reach the 3GPP service.
class Egmf {
 public:
  explicit Egmf(EgmfPolicy policy) : policy_(std::move(policy)) {}

  bool allows(const std::string& capability, const std::string& consumer_domain) const;
  /// Installs the gate on the fabric for `domain_id`.
  void install(Fabric& fabric, const std::string& domain_id) const;

  const EgmfPolicy& policy() const { return policy_; }

 private:
  EgmfPolicy policy_;
};

}  // namespace zsm
