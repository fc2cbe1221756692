#include "felsim/harness/scenarios.hpp"

#include <cstdio>
#include <string>

#include "felsim/error.hpp"

namespace felsim::harness {

namespace {

std::string item(char cls, unsigned index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "/%c/item-%04u", cls, index);
    return buf;
}

std::string label(const char* prefix, unsigned community, unsigned i) {
    return std::string(prefix) + "-" + std::to_string(community) + "-" + std::to_string(i);
}

RequesterConfig zipf(std::string name, ccn::ContentClass cls) {
    return RequesterConfig{std::move(name), cls, workload::ZipfModel{1.0, 50.0}};
}

// Four consecutive items of the class, a different block per community.
RequesterConfig periodic(std::string name, ccn::ContentClass cls, unsigned community) {
    PeriodicSpec p{150, {}};
    const char c = cls == ccn::ContentClass::TypeA ? 'a' : 'b';
    for (unsigned j = 1; j <= 4; ++j) p.playlist.push_back(item(c, community * 4 + j));
    return RequesterConfig{std::move(name), cls, p};
}

ScenarioConfig base(ScenarioKind kind, std::uint64_t seed) {
    ScenarioConfig c;
    c.scenario = kind;
    c.name = std::string(to_string(kind));
    c.seed = seed;
    c.duration_ms = 60'000;
    c.community.communities = 5;
    c.community.requesters_per_community = 2;
    c.community.cs_capacity_fog = 10;
    c.catalog.items_per_class = 50;
    c.fel.agent.k = 10;
    c.fel.agent.epoch_ms = 1000;
    return c;
}

} // namespace

ScenarioConfig scenario_a(std::uint64_t seed) {
    ScenarioConfig c = base(ScenarioKind::A, seed);
    for (unsigned k = 0; k < c.community.communities; ++k) {
        c.requesters.push_back(zipf(label("req", k, 0), ccn::ContentClass::TypeA));
        c.requesters.push_back(periodic(label("req", k, 1), ccn::ContentClass::TypeB, k));
    }
    c.arms.push_back(ArmConfig{"cloud", false, false, false, false, false, {}});
    c.arms.push_back(ArmConfig{"fel", true, true, true, false, false, {}});
    return c;
}

ScenarioConfig scenario_b(std::uint64_t seed) {
    ScenarioConfig c = base(ScenarioKind::B, seed);
    for (unsigned k = 0; k < c.community.communities; ++k) {
        // The model alternates by community so both types see both models.
        if (k % 2 == 0) {
            c.requesters.push_back(zipf(label("req", k, 0), ccn::ContentClass::TypeA));
            c.requesters.push_back(periodic(label("req", k, 1), ccn::ContentClass::TypeB, k));
        } else {
            c.requesters.push_back(periodic(label("req", k, 0), ccn::ContentClass::TypeA, k));
            c.requesters.push_back(zipf(label("req", k, 1), ccn::ContentClass::TypeB));
        }
    }
    c.fel.tasks = {{"popularity-model", 12, 4'000'000, false}, {"session-model", 20, 1'000'000, true}};
    c.fel.cost.fallback = fel::DomainCost{1.0, 1e-6, 2.0};
    c.arms.push_back(ArmConfig{"nofel", false, false, false, false, false, {}});
    c.arms.push_back(ArmConfig{"fel", true, true, true, true, false, {}});
    return c;
}

ScenarioConfig scenario_c(std::uint64_t seed) {
    ScenarioConfig c = base(ScenarioKind::C, seed);
    c.community.communities = 2;
    c.community.requesters_per_community = 10;
    c.community.aps_per_community = 2;
    c.community.d2d = true;
    c.community.d2d_latency = 3;
    c.community.cs_capacity_requester = 3;
    c.community.cs_capacity_bs = 10;
    for (unsigned k = 0; k < c.community.communities; ++k) {
        for (unsigned i = 0; i < c.community.requesters_per_community; ++i) {
            c.requesters.push_back(zipf(label("req", k, i), ccn::ContentClass::TypeA));
            // Out to the other access point of the same base station, then back home.
            const Millis offset = static_cast<Millis>(i) * 500 + static_cast<Millis>(k) * 250;
            c.handovers.push_back({label("req", k, i), label("ap", k, 1 - i % 2), 15'000 + offset});
            c.handovers.push_back({label("req", k, i), label("ap", k, i % 2), 40'000 + offset});
        }
    }
    c.arms.push_back(ArmConfig{"baseline", false, false, false, false, false, mobility::HandoverScheme::BaselineRedirect});
    c.arms.push_back(ArmConfig{"fel", true, true, true, false, true, mobility::HandoverScheme::FelUpstreamCache});
    return c;
}

ScenarioConfig scenario_for(ScenarioKind kind, std::uint64_t seed) {
    switch (kind) {
        case ScenarioKind::A: return scenario_a(seed);
        case ScenarioKind::B: return scenario_b(seed);
        case ScenarioKind::C: return scenario_c(seed);
        case ScenarioKind::Custom: break;
    }
    throw InvalidSpec("custom scenarios come from a config file");
}

} // namespace felsim::harness
