#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "zsmsim/fabric/trace.hpp"
#include "zsmsim/infra/nfv.hpp"

namespace zsm {

struct PreparedRequest {
  ScaleRequest request;
  std::string annotation;  // "lifecycle_ok" once the lifecycle check passed
};

struct VimTicket {
  std::uint64_t ticket_id = 0;
  std::string vnf_id;
  std::string pop_id;
  ResourceProfile delta;
  std::string correlation_id;
};

/// Step tags MANO stamps on its own hops. Options 1A/1B use 8/9/10; the
/// complementary option folds all three into 9.
struct ManoStepLabels {
  std::string prepare = "8";
  std::string scale_resource = "9";
  std::string vim_modify = "10";
};

/// Where MANO trace records are written and which NFVO received the request.
struct ManoScope {
  Tick tick = 0;
  std::string correlation_id;
  std::string slice_id;
  std::string nfvo_domain;
};

/// NFVO, VNFM and VIM over one NfvInfrastructure.
class Mano {
 public:
  /// Maps a PoP to the domain whose NFVO/VNFM/VIM manage it.
  using DomainResolver = std::function<std::string(const std::string& pop_id)>;

  Mano(NfvInfrastructure& infra, Trace& trace, DomainResolver resolver, ManoStepLabels labels = {});

  /// Validate, check feasibility (clamping to PoP headroom when at least one
  /// vCPU is free), then prepare (VNFM), Scale Resource (VNFM -> NFVO) and
  /// modify resources (VIM). Failures leave VNF and PoP state unchanged.
  ScaleOutcome nfvo_scale_vnf(const ScaleRequest& request, const ManoScope& scope);

  /// Lifecycle check and transition to Scaling. AlreadyScaling when a scale
  /// operation is active; LifecycleViolation when the result would leave
  /// [kMinimumProfile, max_resources].
  PreparedRequest vnfm_prepare(const ScaleRequest& request);

  /// Records VNFM -> NFVO (Scale Resource) and NFVO -> VIM, returning the
  /// ticket the VIM executes. Returns the index of the VIM record through
  /// `vim_record` when non-null.
  VimTicket vnfm_scale_resource(const PreparedRequest& prepared, const ManoScope& scope,
                                std::size_t* vim_record = nullptr);

  /// Applies a delta atomically to the VNF and its PoP and returns the new
  /// profile. CapacityExceeded / BelowMinimum / LifecycleViolation leave state
  /// untouched.
  ResourceProfile vim_modify_resources(const std::string& vnf_id, const ResourceProfile& delta);

  const ManoStepLabels& labels() const { return labels_; }
  void set_labels(ManoStepLabels labels) { labels_ = std::move(labels); }
  NfvInfrastructure& infra() { return infra_; }

 private:
  std::size_t record(const ManoScope& scope, const std::string& label, const std::string& domain,
                     const std::string& source_service, const std::string& target_capability,
                     const std::string& detail);

  NfvInfrastructure& infra_;
  Trace& trace_;
  DomainResolver resolver_;
  ManoStepLabels labels_;
  std::uint64_t next_ticket_ = 1;
};

}  // namespace zsm
