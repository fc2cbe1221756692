#pragma once

#include <cstdint>

#include "felsim/harness/config.hpp"

namespace felsim::harness {

/// Five communities, one Zipf and one periodic requester each; arms "cloud" and "fel".
ScenarioConfig scenario_a(std::uint64_t seed);
/// Every base station joins the fog layer; TypeA/TypeB requesters with grants; arms "nofel" and "fel".
ScenarioConfig scenario_b(std::uint64_t seed);
/// Twenty mobile requesters with RAN and D2D links; arms "baseline" and "fel".
ScenarioConfig scenario_c(std::uint64_t seed);

ScenarioConfig scenario_for(ScenarioKind kind, std::uint64_t seed);

} // namespace felsim::harness
