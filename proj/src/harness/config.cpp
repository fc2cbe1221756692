#include "felsim/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "felsim/error.hpp"

namespace felsim::harness {

namespace pt = boost::property_tree;

std::string_view to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::A: return "a";
        case ScenarioKind::B: return "b";
        case ScenarioKind::C: return "c";
        case ScenarioKind::Custom: return "custom";
    }
    return "custom";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "a") return ScenarioKind::A;
    if (t == "b") return ScenarioKind::B;
    if (t == "c") return ScenarioKind::C;
    if (t == "custom") return ScenarioKind::Custom;
    throw InvalidSpec("unknown scenario '" + std::string(text) + "'");
}

namespace {

// Typed access to one INI section; every key must be consumed exactly once.
class Section {
public:
    Section(std::string name, const pt::ptree& tree) : name_(std::move(name)), tree_(tree) {
        for (const auto& [key, child] : tree_) {
            if (!child.empty()) throw ConfigError(name_ + "." + key, "nested keys are not supported");
            if (!keys_.insert(key).second) throw ConfigError(name_ + "." + key, "duplicate key");
        }
    }

    const std::string& name() const { return name_; }
    std::string path(const std::string& key) const { return name_ + "." + key; }

    std::optional<std::string> raw(const std::string& key) {
        const auto it = tree_.find(key);
        if (it == tree_.not_found()) return std::nullopt;
        used_.insert(key);
        return it->second.data();
    }

    std::string text(const std::string& key, std::string fallback) { return raw(key).value_or(std::move(fallback)); }

    std::string require(const std::string& key) {
        auto v = raw(key);
        if (!v) throw ConfigError(path(key), "missing required key");
        return *v;
    }

    template <typename Int>
    Int integer(const std::string& key, Int fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        Int out{};
        const auto* end = v->data() + v->size();
        const auto [ptr, ec] = std::from_chars(v->data(), end, out);
        if (ec != std::errc{} || ptr != end || v->empty()) throw ConfigError(path(key), "expected an integer, got '" + *v + "'");
        return out;
    }

    double real(const std::string& key, double fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        return parse_real(key, *v);
    }

    double parse_real(const std::string& key, const std::string& v) const {
        double out = 0.0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (ec != std::errc{} || ptr != end || v.empty()) throw ConfigError(path(key), "expected a number, got '" + v + "'");
        return out;
    }

    bool boolean(const std::string& key, bool fallback) {
        const auto v = raw(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "yes" || *v == "on" || *v == "1") return true;
        if (*v == "false" || *v == "no" || *v == "off" || *v == "0") return false;
        throw ConfigError(path(key), "expected true or false, got '" + *v + "'");
    }

    void finish() const {
        for (const auto& k : keys_) {
            if (!used_.contains(k)) throw ConfigError(path(k), "unknown key");
        }
    }

private:
    std::string name_;
    const pt::ptree& tree_;
    std::set<std::string> keys_;
    std::set<std::string> used_;
};

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename Fn>
auto wrap(const std::string& field, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field, e.what());
    }
}

void read_scenario(Section& s, ScenarioConfig& c) {
    if (const auto kind = s.raw("kind")) c.scenario = wrap(s.path("kind"), [&] { return parse_scenario_kind(*kind); });
    c.name = s.text("name", std::string(to_string(c.scenario)));
    c.seed = s.integer<std::uint64_t>("seed", c.seed);
    c.duration_ms = s.integer<Millis>("duration_ms", c.duration_ms);
    c.pit_lifetime_ms = s.integer<Millis>("pit_lifetime_ms", c.pit_lifetime_ms);
    c.output_dir = s.text("output_dir", c.output_dir);
}

void read_topology(Section& s, CommunitySpec& t) {
    t.communities = s.integer("communities", t.communities);
    t.requesters_per_community = s.integer("requesters_per_community", t.requesters_per_community);
    t.aps_per_community = s.integer("aps_per_community", t.aps_per_community);
    t.requester_ap_latency = s.integer("requester_ap_latency_ms", t.requester_ap_latency);
    t.ap_bs_latency = s.integer("ap_bs_latency_ms", t.ap_bs_latency);
    t.bs_gateway_latency = s.integer("bs_gateway_latency_ms", t.bs_gateway_latency);
    t.gateway_cloud_latency = s.integer("gateway_cloud_latency_ms", t.gateway_cloud_latency);
    t.fog_access_latency = s.integer("fog_access_latency_ms", t.fog_access_latency);
    t.d2d = s.boolean("d2d", t.d2d);
    t.d2d_latency = s.integer("d2d_latency_ms", t.d2d_latency);
    t.idle_compute_requester = s.integer("idle_compute_requester", t.idle_compute_requester);
    t.idle_compute_ap = s.integer("idle_compute_ap", t.idle_compute_ap);
    t.idle_compute_bs = s.integer("idle_compute_bs", t.idle_compute_bs);
    t.idle_compute_fog = s.integer("idle_compute_fog", t.idle_compute_fog);
    t.cs_capacity_requester = s.integer("cs_capacity_requester", t.cs_capacity_requester);
    t.cs_capacity_ap = s.integer("cs_capacity_ap", t.cs_capacity_ap);
    t.cs_capacity_bs = s.integer("cs_capacity_bs", t.cs_capacity_bs);
    t.cs_capacity_gateway = s.integer("cs_capacity_gateway", t.cs_capacity_gateway);
    t.cs_capacity_fog = s.integer("cs_capacity_fog", t.cs_capacity_fog);
}

void read_fel(Section& s, FelSettings& f) {
    f.agent.k = s.integer("k", f.agent.k);
    f.agent.epoch_ms = s.integer("epoch_ms", f.agent.epoch_ms);
    if (const auto eps = s.raw("epsilon")) {
        if (*eps == "inverse") {
            f.agent.epsilon = fel::EpsilonSchedule::inverse_epoch();
        } else {
            f.agent.epsilon = fel::EpsilonSchedule::constant(s.parse_real("epsilon", *eps));
        }
    }
    if (const auto cands = s.raw("candidates")) {
        f.agent.candidates.clear();
        for (const auto& w : split_words(*cands)) {
            f.agent.candidates.push_back(wrap(s.path("candidates"), [&] { return fel::parse_candidate(w); }));
        }
    }
    f.ticket_threshold = s.integer("ticket_threshold", f.ticket_threshold);
    f.recent_window = s.integer("recent_window", f.recent_window);
    f.cost.comm_delay_penalty = s.real("comm_delay_penalty", f.cost.comm_delay_penalty);
    f.cost.fallback.compute_price = s.real("compute_price", f.cost.fallback.compute_price);
    f.cost.fallback.caching_cost = s.real("caching_cost", f.cost.fallback.caching_cost);
    f.cost.fallback.comm_delay_ms = s.real("comm_delay_ms", f.cost.fallback.comm_delay_ms);
}

ArmConfig read_arm(Section& s, std::string name) {
    ArmConfig a;
    a.name = std::move(name);
    a.fel = s.boolean("fel", a.fel);
    a.fog_caching = s.boolean("fog_caching", a.fog_caching);
    a.fog_offload = s.boolean("fog_offload", a.fog_offload);
    a.grants = s.boolean("grants", a.grants);
    a.link_selection = s.boolean("link_selection", a.link_selection);
    if (const auto scheme = s.raw("scheme")) a.scheme = wrap(s.path("scheme"), [&] { return mobility::parse_scheme(*scheme); });
    return a;
}

RequesterConfig read_requester(Section& s, std::string label) {
    RequesterConfig r;
    r.label = std::move(label);
    r.cls = wrap(s.path("class"), [&] { return ccn::parse_content_class(s.text("class", "a")); });
    const std::string model = s.text("model", "zipf");
    if (model == "zipf") {
        workload::ZipfModel z;
        z.s = s.real("s", z.s);
        z.mean_interarrival_ms = s.real("mean_interarrival_ms", z.mean_interarrival_ms);
        r.model = z;
    } else if (model == "periodic") {
        PeriodicSpec p;
        p.period_ms = s.integer("period_ms", p.period_ms);
        p.playlist = split_words(s.require("playlist"));
        r.model = p;
    } else {
        throw ConfigError(s.path("model"), "expected zipf or periodic, got '" + model + "'");
    }
    return r;
}

HandoverConfig read_handover(Section& s) {
    HandoverConfig h;
    h.requester = s.require("requester");
    h.to_ap = s.require("to_ap");
    h.at_ms = s.integer<Millis>("at_ms", h.at_ms);
    return h;
}

fel::LearningTask read_task(Section& s, std::string id) {
    fel::LearningTask t;
    t.task_id = std::move(id);
    t.cycles = s.integer("cycles", t.cycles);
    t.data_bytes = s.integer("data_bytes", t.data_bytes);
    t.delay_sensitive = s.boolean("delay_sensitive", t.delay_sensitive);
    return t;
}

fel::DomainCost read_cost(Section& s, const fel::DomainCost& base) {
    fel::DomainCost c = base;
    c.compute_price = s.real("compute_price", c.compute_price);
    c.caching_cost = s.real("caching_cost", c.caching_cost);
    c.comm_delay_ms = s.real("comm_delay_ms", c.comm_delay_ms);
    return c;
}

std::pair<std::string, std::string> split_section(const std::string& key) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) return {key, ""};
    return {key.substr(0, dot), key.substr(dot + 1)};
}

} // namespace

ScenarioConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()), e.message());
    }

    ScenarioConfig c;
    // Per-domain costs are resolved after [fel] so they inherit its defaults.
    std::vector<std::pair<std::string, const pt::ptree*>> costs;
    for (const auto& [key, child] : tree) {
        if (child.empty() && !child.data().empty()) throw ConfigError(key, "key outside of any section");
        const auto [kind, sub] = split_section(key);
        Section s(key, child);
        if (kind == "scenario" && sub.empty()) {
            read_scenario(s, c);
        } else if (kind == "topology" && sub.empty()) {
            read_topology(s, c.community);
        } else if (kind == "catalog" && sub.empty()) {
            c.catalog.items_per_class = s.integer("items_per_class", c.catalog.items_per_class);
            c.catalog.size_bytes = s.integer("size_bytes", c.catalog.size_bytes);
        } else if (kind == "fel" && sub.empty()) {
            read_fel(s, c.fel);
        } else if (kind == "link" && sub.empty()) {
            c.link_epsilon = s.real("epsilon", c.link_epsilon);
        } else if (kind == "arm" && !sub.empty()) {
            c.arms.push_back(read_arm(s, sub));
        } else if (kind == "requester" && !sub.empty()) {
            c.requesters.push_back(read_requester(s, sub));
        } else if (kind == "handover" && !sub.empty()) {
            c.handovers.push_back(read_handover(s));
        } else if (kind == "task" && !sub.empty()) {
            c.fel.tasks.push_back(read_task(s, sub));
        } else if (kind == "cost" && !sub.empty()) {
            costs.emplace_back(key, &child);
            continue;
        } else {
            throw ConfigError(key, "unknown section");
        }
        s.finish();
    }
    for (const auto& [key, child] : costs) {
        Section s(key, *child);
        c.fel.cost.per_domain[split_section(key).second] = read_cost(s, c.fel.cost.fallback);
        s.finish();
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(in);
}

std::string to_ini(const ScenarioConfig& c) {
    std::ostringstream o;
    const auto b = [](bool v) { return v ? "true" : "false"; };
    o << "[scenario]\n"
      << "kind = " << to_string(c.scenario) << "\n"
      << "name = " << c.name << "\n"
      << "seed = " << c.seed << "\n"
      << "duration_ms = " << c.duration_ms << "\n"
      << "pit_lifetime_ms = " << c.pit_lifetime_ms << "\n"
      << "output_dir = " << c.output_dir << "\n\n";

    const auto& t = c.community;
    o << "[topology]\n"
      << "communities = " << t.communities << "\n"
      << "requesters_per_community = " << t.requesters_per_community << "\n"
      << "aps_per_community = " << t.aps_per_community << "\n"
      << "requester_ap_latency_ms = " << t.requester_ap_latency << "\n"
      << "ap_bs_latency_ms = " << t.ap_bs_latency << "\n"
      << "bs_gateway_latency_ms = " << t.bs_gateway_latency << "\n"
      << "gateway_cloud_latency_ms = " << t.gateway_cloud_latency << "\n"
      << "fog_access_latency_ms = " << t.fog_access_latency << "\n"
      << "d2d = " << b(t.d2d) << "\n"
      << "d2d_latency_ms = " << t.d2d_latency << "\n"
      << "idle_compute_requester = " << t.idle_compute_requester << "\n"
      << "idle_compute_ap = " << t.idle_compute_ap << "\n"
      << "idle_compute_bs = " << t.idle_compute_bs << "\n"
      << "idle_compute_fog = " << t.idle_compute_fog << "\n"
      << "cs_capacity_requester = " << t.cs_capacity_requester << "\n"
      << "cs_capacity_ap = " << t.cs_capacity_ap << "\n"
      << "cs_capacity_bs = " << t.cs_capacity_bs << "\n"
      << "cs_capacity_gateway = " << t.cs_capacity_gateway << "\n"
      << "cs_capacity_fog = " << t.cs_capacity_fog << "\n\n";

    o << "[catalog]\n"
      << "items_per_class = " << c.catalog.items_per_class << "\n"
      << "size_bytes = " << c.catalog.size_bytes << "\n\n";

    const auto& f = c.fel;
    o << "[fel]\n"
      << "k = " << f.agent.k << "\n"
      << "epoch_ms = " << f.agent.epoch_ms << "\n"
      << "epsilon = "
      << (f.agent.epsilon.kind == fel::EpsilonSchedule::Kind::InverseEpoch ? std::string("inverse")
                                                                            : format_real(f.agent.epsilon.value))
      << "\n"
      << "candidates =";
    for (const auto& cand : f.agent.candidates) o << " " << fel::to_string(cand);
    o << "\n"
      << "ticket_threshold = " << f.ticket_threshold << "\n"
      << "recent_window = " << f.recent_window << "\n"
      << "comm_delay_penalty = " << format_real(f.cost.comm_delay_penalty) << "\n"
      << "compute_price = " << format_real(f.cost.fallback.compute_price) << "\n"
      << "caching_cost = " << format_real(f.cost.fallback.caching_cost) << "\n"
      << "comm_delay_ms = " << format_real(f.cost.fallback.comm_delay_ms) << "\n\n";

    o << "[link]\nepsilon = " << format_real(c.link_epsilon) << "\n\n";

    for (const auto& [domain, cost] : f.cost.per_domain) {
        o << "[cost." << domain << "]\n"
          << "compute_price = " << format_real(cost.compute_price) << "\n"
          << "caching_cost = " << format_real(cost.caching_cost) << "\n"
          << "comm_delay_ms = " << format_real(cost.comm_delay_ms) << "\n\n";
    }
    for (const auto& task : f.tasks) {
        o << "[task." << task.task_id << "]\n"
          << "cycles = " << task.cycles << "\n"
          << "data_bytes = " << task.data_bytes << "\n"
          << "delay_sensitive = " << b(task.delay_sensitive) << "\n\n";
    }
    for (const auto& a : c.arms) {
        o << "[arm." << a.name << "]\n"
          << "fel = " << b(a.fel) << "\n"
          << "fog_caching = " << b(a.fog_caching) << "\n"
          << "fog_offload = " << b(a.fog_offload) << "\n"
          << "grants = " << b(a.grants) << "\n"
          << "link_selection = " << b(a.link_selection) << "\n"
          << "scheme = " << mobility::to_string(a.scheme) << "\n\n";
    }
    for (const auto& r : c.requesters) {
        o << "[requester." << r.label << "]\n"
          << "class = " << (r.cls == ccn::ContentClass::TypeA ? "a" : "b") << "\n";
        if (const auto* z = std::get_if<workload::ZipfModel>(&r.model)) {
            o << "model = zipf\n"
              << "s = " << format_real(z->s) << "\n"
              << "mean_interarrival_ms = " << format_real(z->mean_interarrival_ms) << "\n\n";
        } else {
            const auto& p = std::get<PeriodicSpec>(r.model);
            o << "model = periodic\n"
              << "period_ms = " << p.period_ms << "\n"
              << "playlist =";
            for (const auto& n : p.playlist) o << " " << n;
            o << "\n\n";
        }
    }
    for (std::size_t i = 0; i < c.handovers.size(); ++i) {
        const auto& h = c.handovers[i];
        o << "[handover." << i << "]\n"
          << "requester = " << h.requester << "\n"
          << "to_ap = " << h.to_ap << "\n"
          << "at_ms = " << h.at_ms << "\n\n";
    }
    std::string out = o.str();
    // Drop the trailing blank line.
    if (out.size() >= 2 && out.ends_with("\n\n")) out.pop_back();
    return out;
}

void validate(const ScenarioConfig& c) {
    if (c.duration_ms <= 0) throw ConfigError("scenario.duration_ms", "must be positive");
    if (c.pit_lifetime_ms < 0) throw ConfigError("scenario.pit_lifetime_ms", "must not be negative");
    if (c.name.empty() || c.name.find(',') != std::string::npos) {
        throw ConfigError("scenario.name", "must be non-empty and contain no comma");
    }
    const Topology topo = wrap("topology", [&] {
        auto t = build_community(c.community);
        t.validate();
        return t;
    });
    if (c.catalog.items_per_class == 0) throw ConfigError("catalog.items_per_class", "must be positive");
    if (c.catalog.size_bytes == 0) throw ConfigError("catalog.size_bytes", "must be positive");
    const ccn::ContentCatalog catalog = build_catalog(c.catalog);

    const auto& agent = c.fel.agent;
    if (agent.epoch_ms <= 0) throw ConfigError("fel.epoch_ms", "must be positive");
    if (agent.candidates.empty()) throw ConfigError("fel.candidates", "needs at least one alpha:beta pair");
    if (agent.epsilon.kind == fel::EpsilonSchedule::Kind::Constant &&
        !(agent.epsilon.value >= 0.0 && agent.epsilon.value <= 1.0)) {
        throw ConfigError("fel.epsilon", "must lie in [0, 1] or be 'inverse'");
    }
    if (agent.k > c.community.cs_capacity_fog && c.community.cs_capacity_fog > 0) {
        throw ConfigError("fel.k", "exceeds the fog store capacity");
    }
    if (!(c.link_epsilon >= 0.0 && c.link_epsilon <= 1.0)) throw ConfigError("link.epsilon", "must lie in [0, 1]");
    std::set<std::string> task_ids;
    for (const auto& t : c.fel.tasks) {
        if (t.cycles == 0) throw ConfigError("task." + t.task_id + ".cycles", "must be positive");
        if (!task_ids.insert(t.task_id).second) throw ConfigError("task." + t.task_id, "duplicate task");
    }

    if (c.arms.empty()) throw ConfigError("arm", "at least one [arm.NAME] section is required");
    for (const auto& a : c.arms) {
        if (a.name.find(',') != std::string::npos) throw ConfigError("arm." + a.name, "arm names must not contain commas");
    }

    std::set<std::string> seen;
    for (const auto& r : c.requesters) {
        const std::string base = "requester." + r.label;
        if (!seen.insert(r.label).second) throw ConfigError(base, "duplicate requester");
        const auto id = topo.find(r.label);
        if (!id || topo.node(*id).kind != NodeKind::Requester) throw ConfigError(base, "no requester node with this label");
        if (catalog.slice(r.cls).empty()) throw ConfigError(base + ".class", "class has no catalog items");
        if (const auto* z = std::get_if<workload::ZipfModel>(&r.model)) {
            if (!(z->s > 0.0)) throw ConfigError(base + ".s", "must be positive");
            if (!(z->mean_interarrival_ms > 0.0)) throw ConfigError(base + ".mean_interarrival_ms", "must be positive");
        } else {
            const auto& p = std::get<PeriodicSpec>(r.model);
            if (p.period_ms <= 0) throw ConfigError(base + ".period_ms", "must be positive");
            if (p.playlist.empty()) throw ConfigError(base + ".playlist", "must not be empty");
            for (const auto& n : p.playlist) {
                const auto* item = wrap(base + ".playlist", [&] { return catalog.find(ccn::ContentName::parse(n)); });
                if (!item) throw ConfigError(base + ".playlist", "'" + n + "' is not in the catalog");
                if (item->cls != r.cls) throw ConfigError(base + ".playlist", "'" + n + "' belongs to another class");
            }
        }
    }

    // Replays the schedule against static attachments to catch impossible moves.
    std::map<NodeId, NodeId> at;
    for (const NodeId r : topo.nodes_of_kind(NodeKind::Requester)) at[r] = topo.attached_aps(r).front();
    std::vector<HandoverConfig> ordered = c.handovers;
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.at_ms < y.at_ms; });
    for (std::size_t i = 0; i < c.handovers.size(); ++i) {
        const auto& h = c.handovers[i];
        const std::string base = "handover." + std::to_string(i);
        const auto req = topo.find(h.requester);
        if (!req || topo.node(*req).kind != NodeKind::Requester) throw ConfigError(base + ".requester", "unknown requester '" + h.requester + "'");
        const auto ap = topo.find(h.to_ap);
        if (!ap || topo.node(*ap).kind != NodeKind::AccessPoint) throw ConfigError(base + ".to_ap", "unknown access point '" + h.to_ap + "'");
        if (h.at_ms < 0 || h.at_ms >= c.duration_ms) throw ConfigError(base + ".at_ms", "must lie in [0, duration_ms)");
    }
    for (const auto& h : ordered) {
        const NodeId req = *topo.find(h.requester);
        const NodeId ap = *topo.find(h.to_ap);
        const NodeId from = at[req];
        const bool same_bs = topo.base_station_of(from) && topo.base_station_of(from) == topo.base_station_of(ap);
        const bool same_gw = topo.gateway_of(from) && topo.gateway_of(from) == topo.gateway_of(ap);
        if (from == ap || !(same_bs || same_gw)) {
            throw ConfigError("handover", h.requester + " cannot move from " + topo.node(from).label + " to " + h.to_ap +
                                              " at " + std::to_string(h.at_ms) + " ms");
        }
        at[req] = ap;
    }
}

} // namespace felsim::harness
