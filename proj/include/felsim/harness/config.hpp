#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "felsim/ccn/catalog.hpp"
#include "felsim/fel/agent.hpp"
#include "felsim/fel/placement.hpp"
#include "felsim/mobility/mobility.hpp"
#include "felsim/topology/topology.hpp"
#include "felsim/workload/workload.hpp"

namespace felsim::harness {

enum class ScenarioKind : std::uint8_t { A, B, C, Custom };

std::string_view to_string(ScenarioKind k);
ScenarioKind parse_scenario_kind(std::string_view text);

struct PeriodicSpec {
    Millis period_ms = 100;
    std::vector<std::string> playlist;
};

struct RequesterConfig {
    std::string label;
    ccn::ContentClass cls = ccn::ContentClass::TypeA;
    std::variant<workload::ZipfModel, PeriodicSpec> model;
};

/// One side of a paired comparison. Every arm runs on the same seed.
struct ArmConfig {
    std::string name;
    bool fel = false;
    // Fog entities keep their configured store; off sets it to 0.
    bool fog_caching = true;
    bool fog_offload = false;
    // Every requester grants its domain agent access to its records.
    bool grants = false;
    bool link_selection = false;
    mobility::HandoverScheme scheme = mobility::HandoverScheme::BaselineRedirect;
};

struct HandoverConfig {
    std::string requester;
    std::string to_ap;
    Millis at_ms = 0;
};

struct FelSettings {
    fel::AgentConfig agent;
    std::uint32_t ticket_threshold = 6;
    std::size_t recent_window = 5;
    std::vector<fel::LearningTask> tasks;
    fel::CostModel cost;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::Custom;
    // Prefix of the scenario column; rows carry "<name>-<arm>".
    std::string name = "custom";
    std::uint64_t seed = 1;
    Millis duration_ms = 60'000;
    Millis pit_lifetime_ms = 0;
    std::string output_dir = "out";

    CommunitySpec community;
    ccn::CatalogSpec catalog;
    FelSettings fel;
    double link_epsilon = 0.1;

    std::vector<ArmConfig> arms;
    std::vector<RequesterConfig> requesters;
    std::vector<HandoverConfig> handovers;
};

/// Reads the INI form. Throws ConfigError naming the offending field.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Writes the INI form; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const ScenarioConfig& config);

/// Checks references and ranges without running. Throws ConfigError.
void validate(const ScenarioConfig& config);

} // namespace felsim::harness
