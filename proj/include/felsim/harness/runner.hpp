#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "felsim/harness/config.hpp"
#include "felsim/harness/metrics.hpp"

namespace felsim::harness {

/// Runs one arm of a scenario under `seed`. Rows come back sorted.
/// Throws InvariantViolation when the run breaks request conservation.
MetricsTable run_arm(const ScenarioConfig& config, const ArmConfig& arm, std::uint64_t seed);

/// Validates, then runs every arm under config.seed. Throws ConfigError.
MetricsTable run_scenario(const ScenarioConfig& config);

/// Runs every (seed, arm) pair on up to `jobs` threads. Counters and epochs
/// come back in seed order, rows fully sorted; the output does not depend on `jobs`.
/// `progress`, if set, is called once per finished pair (from worker threads).
MetricsTable run_seeds(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds, unsigned jobs = 1,
                       const std::function<void(std::uint64_t seed, const std::string& arm)>& progress = {});

} // namespace felsim::harness
