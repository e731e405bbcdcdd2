#include "zsmsim/zsm/analytics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "zsmsim/error.hpp"

namespace zsm {

std::string_view to_string(SampleTag tag) {
  switch (tag) {
    case SampleTag::Store: return "Store";
    case SampleTag::Analyze: return "Analyze";
    case SampleTag::Localized: return "Localized";
  }
  return "?";
}

std::string_view to_string(Destination destination) {
  switch (destination) {
    case Destination::DomainDataStorage: return "DomainDataStorage";
    case Destination::DomainAnalytics: return "DomainAnalytics";
    case Destination::Udsf: return "Udsf";
  }
  return "?";
}

SampleTag parse_sample_tag(std::string_view text) {
  if (text == "Store") return SampleTag::Store;
  if (text == "Analyze") return SampleTag::Analyze;
  if (text == "Localized") return SampleTag::Localized;
  throw Error(ErrorCode::PreconditionViolated, fmt::format("unknown sample tag '{}'", text));
}

Destination route_sample(const TelemetrySample&, SampleTag tag) {
  switch (tag) {
    case SampleTag::Store: return Destination::DomainDataStorage;
    case SampleTag::Analyze: return Destination::DomainAnalytics;
    case SampleTag::Localized: return Destination::Udsf;
  }
  return Destination::DomainAnalytics;
}

Payload encode_sample(const TelemetrySample& s) {
  Payload p;
  p.set("nf", s.nf_id);
  p.set("metric", std::string(to_string(s.metric)));
  p.set("value", s.value);
  p.set("tick", std::int64_t{s.tick});
  return p;
}

TelemetrySample decode_sample(const Payload& p) {
  return {p.str("nf"), parse_metric(p.str("metric")), p.number("value"), p.integer("tick")};
}

Payload encode_stream(const std::vector<TaggedSample>& stream) {
  Payload p;
  p.set("count", static_cast<std::int64_t>(stream.size()));
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto prefix = fmt::format("s{}.", i);
    const auto& s = stream[i].sample;
    p.set(prefix + "nf", s.nf_id);
    p.set(prefix + "metric", std::string(to_string(s.metric)));
    p.set(prefix + "value", s.value);
    p.set(prefix + "tick", std::int64_t{s.tick});
    p.set(prefix + "tag", std::string(to_string(stream[i].tag)));
  }
  return p;
}

std::vector<TaggedSample> decode_stream(const Payload& p) {
  std::vector<TaggedSample> out;
  const auto n = p.integer("count");
  for (std::int64_t i = 0; i < n; ++i) {
    const auto prefix = fmt::format("s{}.", i);
    out.push_back({{p.str(prefix + "nf"), parse_metric(p.str(prefix + "metric")), p.number(prefix + "value"),
                    p.integer(prefix + "tick")},
                   parse_sample_tag(p.str(prefix + "tag"))});
  }
  return out;
}

std::string telemetry_correlation(Tick tick, std::string_view nf_id) {
  return fmt::format("tel-{:06}-{}", tick, nf_id);
}

void DomainDataStorage::put(const TelemetrySample& sample) {
  series_[{sample.nf_id, sample.metric}].push_back(sample);
  ++size_;
}

std::optional<TelemetrySample> DomainDataStorage::latest(const std::string& nf_id, Metric metric) const {
  auto it = series_.find({nf_id, metric});
  if (it == series_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

const std::vector<TelemetrySample>& DomainDataStorage::series(const std::string& nf_id, Metric metric) const {
  static const std::vector<TelemetrySample> empty;
  auto it = series_.find({nf_id, metric});
  return it == series_.end() ? empty : it->second;
}

std::optional<AnomalyEvent> detect_anomaly(std::span<const TelemetrySample> window, const DetectionConfig& config) {
  const std::size_t need = config.baseline_window + config.confirmations;
  if (config.baseline_window == 0 || config.confirmations == 0)
    throw Error(ErrorCode::PreconditionViolated, "detection windows must be positive");
  if (window.size() < need)
    throw Error(ErrorCode::InsufficientData,
                fmt::format("detection needs {} samples, window holds {}", need, window.size()));

  const auto tail = window.last(need);
  const auto baseline = tail.first(config.baseline_window);
  const auto recent = tail.last(config.confirmations);

  double sum = 0.0;
  for (const auto& s : baseline) sum += s.value;
  const double mean = sum / static_cast<double>(baseline.size());
  double sq = 0.0;
  for (const auto& s : baseline) sq += (s.value - mean) * (s.value - mean);
  const double stddev = std::sqrt(sq / static_cast<double>(baseline.size()));

  const double limit = mean + 3.0 * stddev;
  const bool fired = std::all_of(recent.begin(), recent.end(), [&](const TelemetrySample& s) {
    return s.value > limit || s.value > config.absolute_threshold;
  });
  if (!fired) return std::nullopt;

  AnomalyEvent event;
  event.nf_id = recent.front().nf_id;
  event.onset_tick = recent.front().tick;
  event.detected_tick = recent.back().tick;
  event.evidence.assign(recent.begin(), recent.end());
  event.baseline_mean = mean;
  event.baseline_stddev = stddev;
  return event;
}

AnomalyTracker::Observation AnomalyTracker::observe(const std::string& slice_id,
                                                    std::span<const TelemetrySample> window) {
  Observation out;
  if (window.empty()) return out;
  const auto& latest = window.back();
  const std::string& nf = latest.nf_id;

  if (auto it = open_.find(nf); it != open_.end()) {
    auto& open = it->second;
    if (open.resolved_at && latest.tick > *open.resolved_at) {
      const double recovered = open.event.baseline_mean + open.event.baseline_stddev;
      open.streak = latest.value < recovered ? open.streak + 1 : 0;
      if (open.streak >= 2 * config_.confirmations) {
        out.cleared = open.event;
        open_.erase(it);
      }
    }
    return out;
  }

  if (window.size() < config_.baseline_window + config_.confirmations) return out;
  auto event = detect_anomaly(window, config_);
  if (!event) return out;
  event->event_id = fmt::format("evt-{}-{}", nf, ++sequence_[nf]);
  event->slice_id = slice_id;
  open_[nf] = Open{*event, std::nullopt, 0};
  ++emitted_;
  out.emitted = std::move(event);
  return out;
}

void AnomalyTracker::resolve(const std::string& nf_id, Tick tick) {
  if (auto it = open_.find(nf_id); it != open_.end()) it->second.resolved_at = tick;
}

const AnomalyEvent* AnomalyTracker::open_event(const std::string& nf_id) const {
  auto it = open_.find(nf_id);
  return it == open_.end() ? nullptr : &it->second.event;
}

std::string_view to_string(ForecastProvider provider) {
  return provider == ForecastProvider::Nwdaf ? "Nwdaf" : "ZsmAnalytics";
}

ForecastProvider forecast_provider(Tick horizon, Tick short_horizon) {
  return horizon <= short_horizon ? ForecastProvider::Nwdaf : ForecastProvider::ZsmAnalytics;
}

double zsm_forecast(std::span<const TelemetrySample> samples, Tick horizon, Tick short_horizon) {
  if (horizon <= short_horizon)
    throw Error(ErrorCode::PreconditionViolated,
                fmt::format("horizon {} belongs to the control plane (<= {})", horizon, short_horizon));
  if (samples.size() < 2)
    throw Error(ErrorCode::InsufficientData, fmt::format("forecast needs 2 samples, got {}", samples.size()));

  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    sx += static_cast<double>(s.tick);
    sy += s.value;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    const double dx = static_cast<double>(s.tick) - mx;
    sxx += dx * dx;
    sxy += dx * (s.value - my);
  }
  const double slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  const double at = static_cast<double>(samples.back().tick + horizon);
  return my + slope * (at - mx);
}

}  // namespace zsm
