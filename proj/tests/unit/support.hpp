#pragma once

#include <functional>
#include <optional>
#include <string>

#include "zsmsim/engine/config.hpp"
#include "zsmsim/error.hpp"
#include "zsmsim/scenario/parser.hpp"

namespace zsmtest {

/// Code of the zsm::Error thrown by `fn`, or nullopt when it returns.
inline std::optional<zsm::ErrorCode> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const zsm::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string bundled(const std::string& name) { return std::string(ZSMSIM_SCENARIO_DIR) + "/" + name; }

inline zsm::ScenarioConfig bundled_scenario(const std::string& name) {
  return zsm::load_scenario_file(bundled(name));
}

/// One slice, one PoP, SMF load `base` with an optional surge.
inline zsm::ScenarioConfig single_slice(zsm::DeploymentOption option, double base, double surge_mult = 1.0,
                                        zsm::Tick surge_at = 30, zsm::Tick max_ticks = 200) {
  zsm::ScenarioConfig c;
  c.option = option;
  c.max_ticks = max_ticks;
  c.pops.push_back({"pop-a", {16, 65536, 1000}});
  zsm::SliceConfig s;
  s.owner = "tenant-a";
  s.pop = "pop-a";
  using zsm::NfType;
  s.nfs = {{NfType::SMF, {}, true}, {NfType::PCF, {}, true}, {NfType::NWDAF, {}, true},
           {NfType::AMF, {}, true}, {NfType::NRF, {}, true}, {NfType::NSSF, {}, true}};
  c.slices.push_back(s);
  zsm::LoadProfile load;
  load.nf_id = "smf-1";
  load.base_load = base;
  if (surge_mult != 1.0) load.surges.push_back({surge_at, max_ticks + 1, surge_mult});
  c.loads.push_back(load);
  return c;
}

}  // namespace zsmtest
