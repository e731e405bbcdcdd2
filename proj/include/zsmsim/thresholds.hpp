#pragma once

#include <cstddef>

#include "zsmsim/types.hpp"

namespace zsm {

/// Tunables of the closed loop and the environment model.
struct Thresholds {
  Tick short_horizon = 10;         // H_short: forecasts up to this go to NWDAF
  std::size_t nwdaf_window = 5;    // W: NWDAF moving-average window
  std::size_t baseline_window = 20;  // W_base
  std::size_t confirmations = 3;     // k
  double absolute_rt_ms = 100.0;     // T_abs
  double util_high = 0.8;            // U_hi
  double util_target = 0.5;          // U_target
  double capacity_per_vcpu = 10.0;   // req/s served per vCPU
  double base_rt_ms = 10.0;
};

}  // namespace zsm
