#include <doctest.h>

#include <optional>

#include "felsim/ccn/network.hpp"
#include "felsim/error.hpp"
#include "felsim/mobility/mobility.hpp"
#include "support/handover_fixture.hpp"

using namespace felsim;
using namespace felsim::mobility;
using felsim::testing::HandoverRig;

namespace {

ccn::ContentName N(const char* s) { return ccn::ContentName::parse(s); }

} // namespace

TEST_CASE("upstream caching serves the first request after a move from the shared BS") {
    HandoverRig fel;
    CHECK(fel.first_request_after_move(HandoverScheme::FelUpstreamCache) == 14);
    CHECK(fel.before_move == 2 * (2 + 5 + 20 + 30));
    HandoverRig base;
    const auto b = base.first_request_after_move(HandoverScheme::BaselineRedirect);
    REQUIRE(b.has_value());
    CHECK(*b == 2 * (2 + 25 + 25 + 5));
}

TEST_CASE("redirect is consumed once per name") {
    HandoverRig rig;
    rig.first_request_after_move(HandoverScheme::BaselineRedirect);
    CHECK_FALSE(rig.mm.take_redirect(rig.req(), N("/a/item-0001")).has_value());
}

TEST_CASE("upstream caching pins the recent names at the shared BS") {
    HandoverRig rig;
    rig.request(N("/a/item-0002"));
    rig.engine.run_until(SimTime{200});
    bool fired = false;
    const auto r = rig.mm.handover(rig.req(), rig.topo.require("ap2"), HandoverScheme::FelUpstreamCache, [&] { fired = true; });
    CHECK(fired);
    CHECK(r.epoch_triggered);
    REQUIRE(r.pinned_at.has_value());
    CHECK(*r.pinned_at == rig.topo.require("bs"));
    CHECK(r.pinned == std::vector{N("/a/item-0002")});
    CHECK(rig.mm.requester(rig.req()).label() == MobilityLabel::Moved);
    CHECK(rig.net.attachment(rig.req()) == rig.topo.require("ap2"));
}

TEST_CASE("invalid handovers throw") {
    HandoverRig rig;
    CHECK_THROWS_AS(rig.mm.handover(rig.req(), rig.topo.require("ap1"), HandoverScheme::FelUpstreamCache), InvalidHandover);
    CHECK_THROWS_AS(rig.mm.handover(rig.req(), rig.topo.require("gw"), HandoverScheme::FelUpstreamCache), InvalidHandover);
    CHECK_THROWS_AS(rig.mm.handover(rig.topo.require("bs"), rig.topo.require("ap2"), HandoverScheme::FelUpstreamCache),
                    InvalidHandover);
    CHECK(rig.mm.requester(rig.req()).label() == MobilityLabel::Home);
}

TEST_CASE("scheme names round trip") {
    CHECK(parse_scheme(to_string(HandoverScheme::BaselineRedirect)) == HandoverScheme::BaselineRedirect);
    CHECK(parse_scheme("fel") == HandoverScheme::FelUpstreamCache);
    CHECK_THROWS(parse_scheme("teleport"));
}

TEST_CASE("selector tries each arm once, then goes greedy") {
    LinkSelector sel(NodeId(0), 0.0);
    sim::RandomStream r(1, "sel");
    CHECK(sel.select(r) == LinkArm::RAN);
    sel.record(LinkArm::RAN, 30);
    CHECK(sel.select(r) == LinkArm::D2D);
    sel.record(LinkArm::D2D, 12);
    for (int i = 0; i < 20; ++i) CHECK(sel.select(r) == LinkArm::D2D);

    LinkSelector ran_only(NodeId(0), 0.5, true, false);
    for (int i = 0; i < 20; ++i) CHECK(ran_only.select(r) == LinkArm::RAN);

    CHECK_THROWS(LinkSelector(NodeId(0), 1.5));
    CHECK_THROWS(LinkSelector(NodeId(0), 0.1, false, false));
}

TEST_CASE("selector prefers the faster D2D arm") {
    LinkSelector sel(NodeId(0), 0.1);
    sim::RandomStream r(42, "sel");
    int d2d = 0, window = 0;
    for (int i = 1; i <= 1000; ++i) {
        const auto arm = sel.select(r);
        sel.record(arm, arm == LinkArm::RAN ? 30 : 12);
        if (i >= 200) {
            ++window;
            d2d += arm == LinkArm::D2D;
        }
    }
    CHECK(double(d2d) / window >= 0.85);
    // Running means stay consistent with the integer sums.
    CHECK(sel.mean(LinkArm::RAN) == double(sel.total(LinkArm::RAN)) / double(sel.pulls(LinkArm::RAN)));
    CHECK(sel.mean(LinkArm::D2D) == 12.0);
    CHECK(sel.pulls(LinkArm::RAN) + sel.pulls(LinkArm::D2D) == 1000);
}

TEST_CASE("D2D availability and miss fallback") {
    CommunitySpec spec;
    spec.communities = 1;
    spec.requesters_per_community = 3;
    spec.d2d = true;
    spec.d2d_latency = 3;
    spec.cs_capacity_requester = 2;
    const Topology topo = build_community(spec);
    const auto cat = ccn::build_catalog(ccn::CatalogSpec{4, 1});
    sim::Engine engine;
    ccn::CcnNetwork net(topo, cat, engine);
    const NodeId r0 = topo.require("req-0-0"), r1 = topo.require("req-0-1"), r2 = topo.require("req-0-2");
    const auto x = N("/a/item-0001");
    const auto peers = topo.d2d_peers(r0);
    CHECK(peers.size() == 2);
    CHECK_FALSE(d2d_availability(net, peers, x).has_value());
    CHECK(d2d_probe_latency(topo, r0) == 6);

    // Miss: probe round trip plus the plain RAN path to the cloud.
    Millis miss = 0;
    net.express(r0, x, [&](const ccn::RequestOutcome& o) { miss = o.latency(); }, {std::nullopt, d2d_probe_latency(topo, r0)});
    engine.run_until(SimTime{1000});
    CHECK(miss == 6 + 2 * (2 + 5 + 10 + 20));

    // Both peers fetch it; the lowest id wins.
    net.express(r2, x, [](const ccn::RequestOutcome&) {});
    net.express(r1, x, [](const ccn::RequestOutcome&) {});
    engine.run_until(SimTime{2000});
    const auto others = topo.d2d_peers(r0);
    REQUIRE(d2d_availability(net, others, x).has_value());
    CHECK(*d2d_availability(net, others, x) == std::min(r1, r2));

    const auto y = N("/a/item-0002");
    net.express(r1, y, [](const ccn::RequestOutcome&) {});
    engine.run_until(SimTime{3000});
    Millis hit = 0;
    std::optional<LinkKind> hop;
    net.express(r0, y, [&](const ccn::RequestOutcome& o) {
        hit = o.latency();
        hop = o.first_hop;
    }, {r1, 0});
    engine.run_until(SimTime{4000});
    CHECK(hit == 6);
    CHECK(hop == LinkKind::D2D);
}
