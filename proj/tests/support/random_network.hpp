#pragma once

// Randomized small CCN runs shared by the unit and acceptance suites.

#include <map>
#include <string>
#include <vector>

#include "felsim/ccn/catalog.hpp"
#include "felsim/ccn/network.hpp"
#include "felsim/sim/engine.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::testing {

struct ConservationReport {
    std::uint64_t issued = 0;
    std::uint64_t delivered = 0;
    std::uint64_t expired = 0;
    std::uint64_t handler_calls = 0;
    std::uint64_t aggregation_violations = 0;
    std::uint64_t capacity_violations = 0;
    std::uint64_t double_completions = 0;
    std::size_t nodes = 0;
    std::size_t requests = 0;
    std::string failure;

    bool ok() const {
        return issued == delivered + expired && handler_calls == issued && aggregation_violations == 0 &&
               capacity_violations == 0 && double_completions == 0 && failure.empty();
    }
};

// A random tree: cloud - gateway - 1..2 BS - 1..3 APs - requesters, optional fog, at most 10 nodes.
inline Topology random_topology(sim::RandomStream& r) {
    Topology t;
    const auto lat = [&] { return static_cast<Millis>(1 + r.next_below(9)); };
    const auto cap = [&] { return static_cast<std::size_t>(r.next_below(4)); };
    const NodeId cloud = t.add_node("cloud", NodeKind::Cloud, 0, kUnboundedCapacity);
    const NodeId gw = t.add_node("gw", NodeKind::Gateway, 0, cap());
    t.add_link(gw, cloud, lat(), LinkKind::Wired);
    std::vector<NodeId> bss;
    const auto n_bs = 1 + r.next_below(2);
    for (std::uint64_t i = 0; i < n_bs; ++i) {
        bss.push_back(t.add_node("bs-" + std::to_string(i), NodeKind::BaseStation, 8, cap()));
        t.add_link(bss.back(), gw, lat(), LinkKind::Wired);
    }
    std::vector<NodeId> aps;
    const auto n_ap = 1 + r.next_below(3);
    for (std::uint64_t i = 0; i < n_ap; ++i) {
        aps.push_back(t.add_node("ap-" + std::to_string(i), NodeKind::AccessPoint, 2, cap()));
        t.add_link(aps.back(), bss[r.next_below(bss.size())], lat(), LinkKind::Wired);
    }
    if (r.next_below(2) == 1) {
        const NodeId fog = t.add_node("fog", NodeKind::FogEntity, 16, cap());
        t.add_link(fog, bss.front(), lat(), LinkKind::Wired);
    }
    const auto room = 10 - t.node_count();
    const auto n_req = 1 + r.next_below(room);
    for (std::uint64_t i = 0; i < n_req; ++i) {
        const NodeId req = t.add_node("req-" + std::to_string(i), NodeKind::Requester, 0, cap());
        t.add_link(req, aps[r.next_below(aps.size())], lat(), LinkKind::RAN);
    }
    t.validate();
    return t;
}

// Open-loop random requests plus random pin changes; checks conservation,
// aggregation and store capacity from the outside.
inline ConservationReport run_conservation_case(std::uint64_t seed) {
    sim::RandomStream r(seed, "conservation");
    ConservationReport rep;
    const Topology topo = random_topology(r);
    rep.nodes = topo.node_count();
    const ccn::ContentCatalog catalog = build_catalog(ccn::CatalogSpec{3, 1});
    sim::Engine engine;
    // Short lifetimes force expiries on some cases.
    const Millis lifetime = r.next_below(3) == 0 ? static_cast<Millis>(1 + r.next_below(20)) : 0;
    ccn::CcnNetwork net(topo, catalog, engine, ccn::NetworkOptions{lifetime, r.next_below(2) == 1});

    std::map<std::tuple<NodeId, std::string>, std::vector<SimTime>> forwards;
    std::map<std::tuple<NodeId, std::string>, std::vector<SimTime>> arrivals;
    ccn::NetworkObserver obs;
    obs.on_forward = [&](NodeId at, const ccn::Interest& i, NodeId, SimTime now) {
        forwards[{at, i.name.str() + "#" + std::string(ccn::to_string(i.traffic))}].push_back(now);
    };
    obs.on_cache = [&](NodeId at, const ccn::ContentName& name, const ccn::EvictionOutcome&, SimTime now) {
        arrivals[{at, name.str()}].push_back(now);
        const auto& cs = net.node(at).cs;
        if (cs.size() > cs.capacity()) ++rep.capacity_violations;
    };
    net.set_observer(obs);

    const auto requesters = topo.nodes_of_kind(NodeKind::Requester);
    const auto& items = catalog.items();
    std::map<std::uint64_t, int> completions;
    rep.requests = 1 + r.next_below(50);
    for (std::size_t i = 0; i < rep.requests; ++i) {
        const SimTime at{static_cast<Millis>(r.next_below(150))};
        const NodeId req = requesters[r.next_below(requesters.size())];
        const auto name = items[r.next_below(items.size())].name;
        engine.schedule(at, sim::EventKind::InterestIssue, [&, req, name] {
            net.express(req, name, [&](const ccn::RequestOutcome& o) {
                ++rep.handler_calls;
                if (++completions[o.request_id] > 1) ++rep.double_completions;
                if (o.satisfied() && o.latency() < 0) rep.failure = "negative latency";
            });
        });
    }
    // A few pin changes on nodes with a store.
    for (int k = 0; k < 3; ++k) {
        const NodeId n(static_cast<std::uint32_t>(r.next_below(topo.node_count())));
        const auto capacity = topo.node(n).cs_capacity;
        if (topo.node(n).kind == NodeKind::Cloud || capacity == 0) continue;
        std::set<ccn::ContentName> pins;
        const auto want = r.next_below(capacity + 1);
        while (pins.size() < want) pins.insert(items[r.next_below(items.size())].name);
        engine.schedule(SimTime{static_cast<Millis>(r.next_below(150))}, sim::EventKind::LearningEpoch,
                        [&net, n, pins] { net.apply_pins(n, pins); });
    }
    try {
        engine.run_all();
    } catch (const std::exception& e) {
        rep.failure = e.what();
    }

    const auto& c = net.counters();
    rep.issued = c.issued;
    rep.delivered = c.delivered;
    rep.expired = c.request_expiries;
    const Millis life = net.pit_lifetime();
    for (const auto& [key, times] : forwards) {
        const auto& [node, tagged] = key;
        const std::string name = tagged.substr(0, tagged.find('#'));
        const auto& got = arrivals[{node, name}];
        for (std::size_t i = 1; i < times.size(); ++i) {
            const bool released = std::any_of(got.begin(), got.end(), [&](SimTime t) {
                return t >= times[i - 1] && t <= times[i];
            });
            if (!released && times[i] - times[i - 1] < life) ++rep.aggregation_violations;
        }
    }
    return rep;
}

} // namespace felsim::testing
