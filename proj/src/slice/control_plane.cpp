#include "zsmsim/slice/control_plane.hpp"

#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

double nwdaf_forecast(std::span<const double> samples, Tick horizon, const ForecastConfig& config) {
  if (horizon > config.short_horizon)
    throw Error(ErrorCode::HorizonTooLong,
                fmt::format("horizon {} exceeds the control-plane limit {}", horizon, config.short_horizon));
  if (config.window == 0 || samples.size() < config.window)
    throw Error(ErrorCode::InsufficientData,
                fmt::format("need {} samples, have {}", config.window, samples.size()));
  auto recent = samples.last(config.window);
  return std::accumulate(recent.begin(), recent.end(), 0.0) / static_cast<double>(recent.size());
}

std::string_view to_string(DataClass data_class) {
  return data_class == DataClass::Localized ? "Localized" : "Management";
}

std::string_view to_string(StorageLocation location) {
  return location == StorageLocation::Udsf ? "UDSF" : "DomainDataStorage";
}

StorageLocation UdsfStore::store(const TelemetrySample& sample, DataClass data_class) {
  if (data_class == DataClass::Localized) {
    samples_[{sample.nf_id, sample.metric, sample.tick}] = sample;
    return StorageLocation::Udsf;
  }
  if (forward_) forward_(sample);
  return StorageLocation::DomainDataStorage;
}

std::optional<TelemetrySample> UdsfStore::retrieve(const std::string& nf_id, Metric metric, Tick tick) const {
  auto it = samples_.find({nf_id, metric, tick});
  if (it == samples_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> UdsfStore::series(const std::string& nf_id, Metric metric) const {
  std::vector<double> out;
  for (auto it = samples_.lower_bound({nf_id, metric, std::numeric_limits<Tick>::min()});
       it != samples_.end() && std::get<0>(it->first) == nf_id && std::get<1>(it->first) == metric; ++it)
    out.push_back(it->second.value);
  return out;
}

std::string policy_stem(std::string_view policy_id) {
  auto dash = policy_id.rfind("-v");
  if (dash == std::string_view::npos || dash + 2 >= policy_id.size()) return std::string(policy_id);
  for (auto c : policy_id.substr(dash + 2))
    if (c < '0' || c > '9') return std::string(policy_id);
  return std::string(policy_id.substr(0, dash));
}

const std::map<std::string, ControlPlanePolicy>& PolicyControl::install(const ControlPlanePolicy& policy) {
  if (slice_ && !slice_->contains(policy.target_nf))
    throw Error(ErrorCode::UnknownTarget,
                fmt::format("NF '{}' is not part of slice '{}'", policy.target_nf, slice_->slice_id));
  if (policy.kind == PolicyKind::Static) {
    if (active_.count(policy.policy_id))
      throw Error(ErrorCode::StaticReinstall, fmt::format("static policy '{}' already installed", policy.policy_id));
    active_[policy.policy_id] = policy;
    return active_;
  }
  const auto stem = policy_stem(policy.policy_id);
  for (auto it = active_.begin(); it != active_.end();) {
    if (it->second.kind == PolicyKind::Dynamic && policy_stem(it->first) == stem)
      it = active_.erase(it);
    else
      ++it;
  }
  active_[policy.policy_id] = policy;
  return active_;
}

}  // namespace zsm
