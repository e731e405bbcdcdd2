#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "zsmsim/engine/config.hpp"

namespace zsm {

/// Parses a scenario document:
///
///     option = 1A          # top-level keys first
///     [thresholds]
///     t_abs = 100
///     [[pop]]
///     id = pop-a
///     vcpu = 8
///     [[slice]]
///     nfs = SMF, PCF, UDSF:Dedicated
///     [[load]]
///     nf = smf-1
///     surge = 30:500:1.125
///
/// SyntaxError carries the line number; ValidationError names the dangling
/// reference.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario_file(const std::string& path);

/// Checks cross references and value ranges of an assembled config.
void validate_scenario(const ScenarioConfig& config);

/// Renders a config back into the document format.
std::string format_scenario(const ScenarioConfig& config);

/// Seeded random scenario for property and conservation testing.
ScenarioConfig random_scenario(std::uint64_t seed);

}  // namespace zsm
