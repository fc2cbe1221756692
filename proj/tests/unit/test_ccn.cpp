#include <doctest.h>

#include "felsim/ccn/catalog.hpp"
#include "felsim/ccn/content_store.hpp"
#include "felsim/ccn/forwarder.hpp"
#include "felsim/ccn/name.hpp"
#include "felsim/ccn/network.hpp"
#include "felsim/error.hpp"
#include "support/random_network.hpp"

using namespace felsim;
using namespace felsim::ccn;

namespace {

ContentName N(const char* s) { return ContentName::parse(s); }

Topology chain() {
    CommunitySpec s;
    s.communities = 1;
    s.requesters_per_community = 2;
    s.cs_capacity_bs = 4;
    return build_community(s);
}

} // namespace

TEST_CASE("names") {
    const auto n = N("/video/news/clip7");
    CHECK(n.size() == 3);
    CHECK(n.str() == "/video/news/clip7");
    CHECK(N("/video").is_prefix_of(n));
    CHECK_FALSE(N("/vid").is_prefix_of(n));
    CHECK(n.prefix(2) == N("/video/news"));
    CHECK_THROWS_AS(N("/a//b"), InvalidName);
    CHECK_THROWS_AS(ContentName(std::vector<std::string>{}), InvalidName);
    CHECK_THROWS_AS(ContentName({std::string(1100, 'x')}), InvalidName);
}

TEST_CASE("translate picks the matching name") {
    ContentCatalog cat;
    cat.add(N("/video/news/clip7"), 1, ContentClass::TypeA);
    cat.add(N("/video/sport/clip7"), 1, ContentClass::TypeA);
    const std::vector<std::string> both{"news", "clip7"};
    CHECK(translate(both, cat) == N("/video/news/clip7"));
    const std::vector<std::string> clip{"clip7"};
    CHECK(translate(clip, cat) == N("/video/news/clip7"));
    const std::vector<std::string> upper{"NEWS"};
    CHECK(translate(upper, cat) == N("/video/news/clip7"));
    const std::vector<std::string> none{"weather"};
    CHECK_THROWS_AS(translate(none, cat), NoMatch);
}

TEST_CASE("catalog naming and slices") {
    const auto cat = build_catalog(CatalogSpec{3, 10});
    CHECK(cat.size() == 6);
    CHECK(cat.slice(ContentClass::TypeA).front() == N("/a/item-0001"));
    CHECK(cat.slice(ContentClass::TypeB).back() == N("/b/item-0003"));
    CHECK(cat.top_level_prefixes() == std::vector<ContentName>{N("/a"), N("/b")});
    ContentCatalog dup;
    dup.add(N("/x"), 1, ContentClass::TypeA);
    CHECK_THROWS_AS(dup.add(N("/x"), 1, ContentClass::TypeB), InvalidSpec);
}

TEST_CASE("LRU eviction") {
    ContentStore cs(2);
    cs.insert(N("/a"), SimTime{1});
    cs.insert(N("/b"), SimTime{2});
    const auto out = cs.insert(N("/c"), SimTime{3});
    CHECK(out.kind == EvictionOutcome::Kind::Evicted);
    CHECK(out.evicted == N("/a"));
    CHECK(cs.entries() == std::vector<ContentName>{N("/c"), N("/b")});
}

TEST_CASE("pinned entries survive eviction") {
    ContentStore cs(2);
    cs.insert(N("/a"), SimTime{0});
    cs.set_pins({N("/a")});
    cs.insert(N("/b"), SimTime{1});
    cs.insert(N("/c"), SimTime{2});
    CHECK(cs.contains(N("/a")));
    CHECK(cs.contains(N("/c")));
    CHECK_FALSE(cs.contains(N("/b")));
    CHECK(cs.is_pinned(N("/a")));
}

TEST_CASE("insert into a fully pinned store is rejected") {
    ContentStore cs(1);
    cs.insert(N("/a"), SimTime{0});
    cs.set_pins({N("/a")});
    CHECK(cs.insert(N("/b"), SimTime{1}).kind == EvictionOutcome::Kind::Rejected);
    CHECK(cs.entries() == std::vector<ContentName>{N("/a")});
}

TEST_CASE("pin sets larger than the store overflow") {
    ContentStore cs(2);
    CHECK_THROWS_AS(cs.set_pins({N("/a"), N("/b"), N("/c")}), PinOverflow);
    cs.insert(N("/a"), SimTime{0});
    cs.insert(N("/b"), SimTime{0});
    CHECK(cs.set_pins({}).empty());
    CHECK(cs.size() == 2);
}

TEST_CASE("on_interest: hit, aggregate, no route") {
    CcnNode node{NodeId(1), NodeKind::BaseStation, ContentStore(2), {}, {}, nullptr, std::nullopt, nullptr, {}};
    node.cs.insert(N("/a/x"), SimTime{0});
    node.fib.add(N("/a"), NodeId(2));

    const auto hit = on_interest(node, Interest{N("/a/x"), NodeId(0), 1, SimTime{0}}, NodeId(0), SimTime{0}, 100);
    CHECK(std::holds_alternative<ReplyData>(hit));

    const auto first = on_interest(node, Interest{N("/a/y"), NodeId(0), 2, SimTime{0}}, NodeId(0), SimTime{0}, 100);
    const auto second = on_interest(node, Interest{N("/a/y"), NodeId(5), 3, SimTime{1}}, NodeId(5), SimTime{1}, 100);
    REQUIRE(std::holds_alternative<Forward>(first));
    CHECK(std::get<Forward>(first).next_hop == NodeId(2));
    CHECK(std::holds_alternative<Aggregate>(second));
    CHECK(node.counters.forwarded == 1);

    CHECK_THROWS_AS(on_interest(node, Interest{N("/z/q"), NodeId(0), 4, SimTime{0}}, NodeId(0), SimTime{0}, 100), NoRoute);
}

TEST_CASE("on_data fans out to every downstream and offers to the store") {
    CcnNode node{NodeId(1), NodeKind::BaseStation, ContentStore(2), {}, {}, nullptr, std::nullopt, nullptr, {}};
    node.fib.add(N("/a"), NodeId(2));
    on_interest(node, Interest{N("/a/y"), NodeId(0), 2, SimTime{0}}, NodeId(0), SimTime{0}, 100);
    on_interest(node, Interest{N("/a/y"), NodeId(5), 3, SimTime{1}}, NodeId(5), SimTime{1}, 100);
    const auto act = on_data(node, Data{N("/a/y"), 1, NodeId(9)}, SimTime{10});
    CHECK(act.deliveries.size() == 2);
    CHECK(node.pit.size() == 0);
    REQUIRE(act.cached);
    CHECK(act.cached->kind == EvictionOutcome::Kind::Inserted);

    const auto again = on_data(node, Data{N("/a/y"), 1, NodeId(9)}, SimTime{11});
    CHECK(again.unsolicited);
    CHECK(node.counters.unsolicited == 1);
}

TEST_CASE("network latency equals twice the path to the serving node") {
    const auto topo = chain();
    const auto cat = build_catalog(CatalogSpec{5, 1});
    sim::Engine engine;
    CcnNetwork net(topo, cat, engine);
    const auto req = topo.require("req-0-0");
    std::vector<RequestOutcome> done;
    net.express(req, N("/a/item-0001"), [&](const RequestOutcome& o) { done.push_back(o); });
    engine.run_all();
    REQUIRE(done.size() == 1);
    CHECK(done[0].latency() == 2 * topo.path_latency(req, topo.require("cloud")));
    CHECK(done[0].served_by == topo.require("cloud"));

    // The BS now holds the item; the second requester hits it there.
    const auto other = topo.require("req-0-1");
    net.express(other, N("/a/item-0001"), [&](const RequestOutcome& o) { done.push_back(o); });
    engine.run_all();
    REQUIRE(done.size() == 2);
    CHECK(done[1].served_by == topo.require("bs-0"));
    CHECK(done[1].latency() == 2 * topo.path_latency(other, topo.require("bs-0")));
}

TEST_CASE("two interests 1 ms apart cause one upstream forward") {
    const auto topo = chain();
    const auto cat = build_catalog(CatalogSpec{5, 1});
    sim::Engine engine;
    CcnNetwork net(topo, cat, engine);
    int bs_forwards = 0;
    NetworkObserver obs;
    obs.on_forward = [&](NodeId at, const Interest&, NodeId, SimTime) { bs_forwards += at == topo.require("bs-0"); };
    net.set_observer(obs);
    int delivered = 0;
    engine.schedule(SimTime{0}, sim::EventKind::InterestIssue,
                    [&] { net.express(topo.require("req-0-0"), N("/a/item-0002"), [&](auto&) { ++delivered; }); });
    engine.schedule(SimTime{1}, sim::EventKind::InterestIssue,
                    [&] { net.express(topo.require("req-0-1"), N("/a/item-0002"), [&](auto&) { ++delivered; }); });
    engine.run_all();
    CHECK(bs_forwards == 1);
    CHECK(delivered == 2);
}

TEST_CASE("apply_pins prefetches missing names") {
    const auto topo = chain();
    const auto cat = build_catalog(CatalogSpec{5, 1});
    sim::Engine engine;
    CcnNetwork net(topo, cat, engine);
    const auto bs = topo.require("bs-0");
    const auto missing = net.apply_pins(bs, {N("/a/item-0003")});
    CHECK(missing == std::vector<ContentName>{N("/a/item-0003")});
    CHECK(net.counters().prefetches == 1);
    engine.run_all();
    CHECK(net.node(bs).cs.is_pinned(N("/a/item-0003")));
    CHECK(net.apply_pins(bs, {}).empty());
    CHECK(net.node(bs).cs.size() == 1);
    CHECK_THROWS_AS(net.apply_pins(bs, {N("/a/item-0001"), N("/a/item-0002"), N("/a/item-0003"), N("/a/item-0004"),
                                        N("/a/item-0005")}),
                    PinOverflow);
}

TEST_CASE("a pending request expires when its lifetime is shorter than the path") {
    const auto topo = chain();
    const auto cat = build_catalog(CatalogSpec{5, 1});
    sim::Engine engine;
    CcnNetwork net(topo, cat, engine, NetworkOptions{10, false});
    std::optional<RequestOutcome> out;
    net.express(topo.require("req-0-0"), N("/a/item-0001"), [&](const RequestOutcome& o) { out = o; });
    engine.run_all();
    REQUIRE(out);
    CHECK_FALSE(out->satisfied());
    CHECK(net.counters().request_expiries == 1);
    CHECK(net.counters().unsolicited_drops > 0);
}

TEST_CASE("property: conservation, aggregation and capacity on random networks") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto rep = testing::run_conservation_case(seed);
        INFO("seed " << seed << ": " << rep.failure);
        CHECK(rep.nodes <= 10);
        CHECK(rep.requests <= 50);
        CHECK(rep.issued == rep.delivered + rep.expired);
        CHECK(rep.handler_calls == rep.issued);
        CHECK(rep.aggregation_violations == 0);
        CHECK(rep.capacity_violations == 0);
        CHECK(rep.double_completions == 0);
        CHECK(rep.failure.empty());
    }
}
