#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "zsmsim/slice/slice_model.hpp"
#include "zsmsim/telemetry.hpp"

namespace zsm {

// --- NWDAF: short-term forecasting at the control plane --------------------

struct ForecastConfig {
  Tick short_horizon = 10;  // H_short
  std::size_t window = 5;   // W
};

/// Moving average of the last `window` samples. Throws HorizonTooLong when
/// the horizon belongs to the management plane and InsufficientData when
/// fewer than `window` samples exist.
double nwdaf_forecast(std::span<const double> samples, Tick horizon, const ForecastConfig& config = {});

// --- UDSF: localized storage -------------------------------------------------

enum class DataClass { Localized, Management };
enum class StorageLocation { Udsf, DomainDataStorage };

std::string_view to_string(DataClass data_class);
std::string_view to_string(StorageLocation location);

/// Control-plane unstructured data store. Only Localized samples are kept;
/// Management samples are forwarded to the management plane sink.
class UdsfStore {
 public:
  using ManagementSink = std::function<void(const TelemetrySample&)>;
  using Key = std::tuple<std::string, Metric, Tick>;

  explicit UdsfStore(ManagementSink forward = {}) : forward_(std::move(forward)) {}

  StorageLocation store(const TelemetrySample& sample, DataClass data_class);
  std::optional<TelemetrySample> retrieve(const std::string& nf_id, Metric metric, Tick tick) const;
  /// Values for one NF/metric in tick order.
  std::vector<double> series(const std::string& nf_id, Metric metric) const;
  std::size_t size() const { return samples_.size(); }

 private:
  ManagementSink forward_;
  std::map<Key, TelemetrySample> samples_;
};

// --- PCF: policy enforcement -------------------------------------------------

enum class PolicyKind { Static, Dynamic };

struct ControlPlanePolicy {
  std::string policy_id;
  PolicyKind kind = PolicyKind::Static;
  std::string target_nf;
  std::map<std::string, std::string> body;
  Tick installed_at = 0;
  std::string provenance;  // decision id for Dynamic policies
};

/// Stem shared by versions of a policy: "d1-v2" -> "d1".
std::string policy_stem(std::string_view policy_id);

/// Active policy set of one slice's PCF.
class PolicyControl {
 public:
  explicit PolicyControl(const SliceInstance* slice = nullptr) : slice_(slice) {}

  /// Installs a policy. Dynamic policies replace the active Dynamic policy
  /// with the same stem; Static ones install once (StaticReinstall after).
  const std::map<std::string, ControlPlanePolicy>& install(const ControlPlanePolicy& policy);

  const std::map<std::string, ControlPlanePolicy>& active() const { return active_; }

 private:
  const SliceInstance* slice_;
  std::map<std::string, ControlPlanePolicy> active_;
};

}  // namespace zsm
