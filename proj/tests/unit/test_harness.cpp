#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "felsim/error.hpp"
#include "felsim/harness/config.hpp"
#include "felsim/harness/metrics.hpp"
#include "felsim/harness/runner.hpp"
#include "felsim/harness/scenarios.hpp"

using namespace felsim;
using namespace felsim::harness;

namespace {

std::string metrics_text(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    write_metrics(out, rows);
    return out.str();
}

std::string counters_text(const std::vector<CounterRow>& rows) {
    std::ostringstream out;
    write_counters(out, rows);
    return out.str();
}

// A shorter run keeps the unit suite quick.
ScenarioConfig shortened(ScenarioConfig c, Millis duration) {
    c.duration_ms = duration;
    std::vector<HandoverConfig> kept;
    for (const auto& h : c.handovers) {
        if (h.at_ms < duration) kept.push_back(h);
    }
    c.handovers = kept;
    return c;
}

ScenarioConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST_CASE("csv quoting") {
    CHECK(csv_field("/a/b") == "/a/b");
    CHECK(csv_field("/a,b/c") == "\"/a,b/c\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("x\ny") == "\"x\ny\"");
}

TEST_CASE("empty tables are header only") {
    CHECK(metrics_text({}) == std::string(kMetricsHeader) + "\n");
    CHECK(counters_text({}) == std::string(kCountersHeader) + "\n");
}

TEST_CASE("metrics round trip is byte identical") {
    std::vector<MetricsRow> rows{
        {"a-fel", 3, "req-0-0", 1, "/a,b/c", 10, 26, 16, "fog-0", "FogEntity", "RAN", "", "1:0"},
        {"a-fel", 3, "req-0-1", 0, "/a/\"q\"", 5, 79, 74, "cloud", "Cloud", "local", "FelUpstreamCache", ""},
    };
    sort_rows(rows);
    CHECK(rows[0].issue_ms == 5);
    const auto text = metrics_text(rows);
    CHECK(text.find('\r') == std::string::npos);
    std::istringstream in(text);
    const auto back = read_metrics(in);
    CHECK(back == rows);
    CHECK(metrics_text(back) == text);

    std::istringstream bad("scenario,nope\n");
    CHECK_THROWS_AS(read_metrics(bad), IoError);
    std::istringstream crlf(std::string(kMetricsHeader) + "\r\n");
    CHECK_THROWS_AS(read_metrics(crlf), IoError);
}

TEST_CASE("counters round trip") {
    const std::vector<CounterRow> rows{{"b-fel", 1, "issued", 12}, {"b-fel", 1, "delivered", 12}};
    std::istringstream in(counters_text(rows));
    CHECK(read_counters(in) == rows);
}

TEST_CASE("config ini round trip") {
    for (const auto kind : {ScenarioKind::A, ScenarioKind::B, ScenarioKind::C}) {
        const auto c = scenario_for(kind, 7);
        const auto text = to_ini(c);
        const auto back = parse_text(text);
        CHECK(to_ini(back) == text);
        CHECK(back.seed == 7);
        CHECK(back.arms.size() == c.arms.size());
        CHECK(back.requesters.size() == c.requesters.size());
        CHECK_NOTHROW(validate(back));
    }
}

TEST_CASE("config errors name the field") {
    auto c = scenario_a(1);
    c.duration_ms = 0;
    try {
        validate(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "scenario.duration_ms");
    }
    const auto base = to_ini(scenario_a(1));
    CHECK_THROWS_AS(parse_text(base + "\n[nonsense]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[scenario]\nkind = a\nbogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[scenario]\nduration_ms = soon\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[scenario\n"), ConfigError);

    auto h = scenario_c(1);
    h.handovers.front().to_ap = "ap-9-9";
    CHECK_THROWS_AS(validate(h), ConfigError);
    auto r = scenario_b(1);
    r.requesters.front().label = "nobody";
    CHECK_THROWS_AS(validate(r), ConfigError);
}

TEST_CASE("scenario A shape and exact latency classes") {
    const auto c = shortened(scenario_a(2), 5000);
    CHECK(build_community(c.community).node_count() == 31);
    const auto t = run_scenario(c);
    std::set<Millis> fel_lat, cloud_lat;
    for (const auto& row : t.rows) {
        (row.scenario == "a-fel" ? fel_lat : cloud_lat).insert(row.latency_ms);
        if (row.cache_hit_node_kind == "FogEntity") CHECK(row.latency_ms == 16);
        if (row.cache_hit_node_kind == "Cloud") CHECK(row.latency_ms == 74);
    }
    CHECK(cloud_lat == std::set<Millis>{74});
    CHECK(fel_lat == std::set<Millis>{16, 74});
}

TEST_CASE("scenario B keeps classes apart and noFEL always goes to the cloud") {
    const auto c = shortened(scenario_b(3), 5000);
    const auto domains = form_fog_domains(build_community(c.community), c.fel.ticket_threshold);
    const auto topo = build_community(c.community);
    for (const NodeId bs : topo.nodes_of_kind(NodeKind::BaseStation)) {
        bool found = false;
        for (const auto& d : domains) found = found || d.anchor == bs;
        CHECK(found);
    }
    std::map<std::string, ccn::ContentClass> cls;
    for (const auto& r : c.requesters) cls[r.label] = r.cls;
    const auto t = run_scenario(c);
    CHECK_FALSE(t.rows.empty());
    for (const auto& row : t.rows) {
        const char prefix = cls.at(row.requester) == ccn::ContentClass::TypeA ? 'a' : 'b';
        CHECK(row.content_name.substr(0, 3) == std::string{'/', prefix, '/'});
        if (row.scenario == "b-nofel") CHECK(row.latency_ms == 74);
    }
}

TEST_CASE("scenario C uses both links under FEL and none of D2D under baseline") {
    const auto c = shortened(scenario_c(4), 20000);
    CHECK(c.requesters.size() == 20);
    const auto t = run_scenario(c);
    std::map<std::string, std::set<std::string>> kinds;
    for (const auto& row : t.rows) {
        if (row.scenario == "c-baseline") CHECK(row.link_kind != "D2D");
        if (row.scenario == "c-fel") kinds[row.requester].insert(row.link_kind);
        CHECK_FALSE(row.scheme.empty());
    }
    CHECK(kinds.size() == 20);
    for (const auto& [req, k] : kinds) {
        CHECK_MESSAGE(k.contains("RAN"), req);
        CHECK_MESSAGE(k.contains("D2D"), req);
    }
}

TEST_CASE("runs are deterministic and independent of the job count") {
    const auto c = shortened(scenario_c(5), 10000);
    const auto one = run_seeds(c, {5, 6}, 1);
    const auto two = run_seeds(c, {5, 6}, 3);
    CHECK(metrics_text(one.rows) == metrics_text(two.rows));
    CHECK(counters_text(one.counters) == counters_text(two.counters));
    for (std::size_t i = 1; i < one.rows.size(); ++i) {
        const auto& a = one.rows[i - 1];
        const auto& b = one.rows[i];
        REQUIRE(std::tie(a.issue_ms, a.requester, a.request_id) <= std::tie(b.issue_ms, b.requester, b.request_id));
    }
    CHECK(metrics_text(run_arm(c, c.arms[1], 5).rows) == metrics_text(run_arm(c, c.arms[1], 5).rows));
}

TEST_CASE("counters balance") {
    const auto t = run_scenario(shortened(scenario_b(9), 5000));
    std::map<std::string, std::map<std::string, std::uint64_t>> by_arm;
    for (const auto& c : t.counters) by_arm[c.scenario][c.counter] = c.value;
    CHECK(by_arm.size() == 2);
    for (auto& [arm, c] : by_arm) {
        CHECK(c["issued"] == c["delivered"] + c["request_expiries"] + c["in_flight_at_end"]);
        std::uint64_t rows = 0;
        for (const auto& r : t.rows) rows += r.scenario == arm;
        CHECK(rows == c["delivered"]);
    }
}
