#pragma once

#include <string>
#include <string_view>

#include "zsmsim/types.hpp"

namespace zsm {

enum class Metric { ResponseTimeMs, UtilizationRatio };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct TelemetrySample {
  std::string nf_id;
  Metric metric = Metric::ResponseTimeMs;
  double value = 0.0;
  Tick tick = 0;

  friend bool operator==(const TelemetrySample&, const TelemetrySample&) = default;
};

}  // namespace zsm
