#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zsmsim/engine/workload.hpp"
#include "zsmsim/slice/slice_model.hpp"
#include "zsmsim/thresholds.hpp"
#include "zsmsim/types.hpp"

namespace zsm {

struct PopConfig {
  std::string pop_id;
  ResourceProfile capacity;
};

struct SliceConfig {
  std::string owner = "tenant";
  std::vector<NfTemplateEntry> nfs;
  std::string pop;  // hosts the slice's dedicated VNFs
  ResourceProfile vnf_resources{1, 1024, 10};
  ResourceProfile vnf_max_resources{8, 1024, 10};
  bool frozen = false;
};

/// A scheduled forecast request for one NF.
struct ForecastRequest {
  Tick tick = 0;
  std::string nf_id;
  Tick horizon = 1;
};

struct ScenarioConfig {
  DeploymentOption option = DeploymentOption::Integrated1A;
  std::vector<PopConfig> pops;
  std::vector<SliceConfig> slices;
  std::vector<LoadProfile> loads;
  std::vector<ForecastRequest> forecasts;
  Thresholds thresholds;
  std::uint64_t seed = 1;
  Tick max_ticks = 500;
  std::string shared_pop;  // hosts shared/overarching VNFs; first PoP when empty
  ResourceProfile shared_vnf_resources{1, 512, 5};
  double jitter_ms = 0.0;
};

}  // namespace zsm
