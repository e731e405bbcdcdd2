#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zsmsim/payload.hpp"
#include "zsmsim/telemetry.hpp"

namespace zsm {

// --- data collection routing -------------------------------------------------

enum class SampleTag { Store, Analyze, Localized };
enum class Destination { DomainDataStorage, DomainAnalytics, Udsf };

std::string_view to_string(SampleTag tag);
std::string_view to_string(Destination destination);
SampleTag parse_sample_tag(std::string_view text);

Destination route_sample(const TelemetrySample& sample, SampleTag tag);

struct TaggedSample {
  TelemetrySample sample;
  SampleTag tag = SampleTag::Analyze;

  friend bool operator==(const TaggedSample&, const TaggedSample&) = default;
};

struct RoutedCounts {
  std::size_t storage = 0;
  std::size_t analytics = 0;
  std::size_t udsf = 0;

  friend bool operator==(const RoutedCounts&, const RoutedCounts&) = default;
};

Payload encode_sample(const TelemetrySample& sample);
TelemetrySample decode_sample(const Payload& payload);
/// Stream encoding: `count` plus `s<i>.{nf,metric,value,tick,tag}` fields.
Payload encode_stream(const std::vector<TaggedSample>& stream);
std::vector<TaggedSample> decode_stream(const Payload& payload);

/// Correlation id of the telemetry chain of one NF at one tick.
std::string telemetry_correlation(Tick tick, std::string_view nf_id);

// --- Domain Data Storage -------------------------------------------------------

class DomainDataStorage {
 public:
  void put(const TelemetrySample& sample);
  std::optional<TelemetrySample> latest(const std::string& nf_id, Metric metric) const;
  const std::vector<TelemetrySample>& series(const std::string& nf_id, Metric metric) const;
  std::size_t size() const { return size_; }

 private:
  std::map<std::pair<std::string, Metric>, std::vector<TelemetrySample>> series_;
  std::size_t size_ = 0;
};

// --- anomaly detection -----------------------------------------------------------

struct DetectionConfig {
  std::size_t baseline_window = 20;  // W_base
  std::size_t confirmations = 3;     // k
  double absolute_threshold = 100.0;  // T_abs
};

struct AnomalyEvent {
  std::string event_id;
  std::string nf_id;
  std::string slice_id;
  std::string kind = "ResponseTimeDegradation";
  Tick onset_tick = 0;     // first confirming sample
  Tick detected_tick = 0;  // last confirming sample
  std::vector<TelemetrySample> evidence;
  double baseline_mean = 0.0;
  double baseline_stddev = 0.0;
};

/// Baseline 3-sigma rule with k confirmations and an absolute fallback over
/// the last W_base + k samples of `window`. Pure; throws InsufficientData when
/// the window is too short.
std::optional<AnomalyEvent> detect_anomaly(std::span<const TelemetrySample> window,
                                           const DetectionConfig& config = {});

/// Keeps at most one open event per NF and clears it after 2k consecutive
/// post-resolution samples below mean + stddev.
class AnomalyTracker {
 public:
  struct Observation {
    std::optional<AnomalyEvent> emitted;
    std::optional<AnomalyEvent> cleared;
  };

  explicit AnomalyTracker(DetectionConfig config = {}) : config_(config) {}

  Observation observe(const std::string& slice_id, std::span<const TelemetrySample> window);
  /// Marks the remediation of the NF's open event as finished at `tick`.
  void resolve(const std::string& nf_id, Tick tick);

  const AnomalyEvent* open_event(const std::string& nf_id) const;
  std::size_t emitted() const { return emitted_; }

 private:
  struct Open {
    AnomalyEvent event;
    std::optional<Tick> resolved_at;
    std::size_t streak = 0;
  };

  DetectionConfig config_;
  std::map<std::string, Open> open_;
  std::map<std::string, std::size_t> sequence_;
  std::size_t emitted_ = 0;
};

// --- forecasting -------------------------------------------------------------------

enum class ForecastProvider { Nwdaf, ZsmAnalytics };
std::string_view to_string(ForecastProvider provider);

/// Overlap split: short horizons go to the control plane.
ForecastProvider forecast_provider(Tick horizon, Tick short_horizon);

/// Least-squares line over (tick, value), evaluated `horizon` ticks after the
/// last sample. Throws InsufficientData below two samples.
double zsm_forecast(std::span<const TelemetrySample> samples, Tick horizon, Tick short_horizon = 10);

}  // namespace zsm
