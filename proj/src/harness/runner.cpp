#include "felsim/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "felsim/ccn/network.hpp"
#include "felsim/error.hpp"
#include "felsim/fel/agent.hpp"
#include "felsim/fel/placement.hpp"
#include "felsim/fel/records.hpp"
#include "felsim/mobility/mobility.hpp"
#include "felsim/sim/engine.hpp"
#include "felsim/workload/workload.hpp"

namespace felsim::harness {

namespace {

CommunitySpec arm_topology(const ScenarioConfig& config, const ArmConfig& arm) {
    CommunitySpec spec = config.community;
    if (!arm.fog_caching) spec.cs_capacity_fog = 0;
    return spec;
}

struct RequesterState {
    NodeId id;
    std::string label;
    workload::RequestGenerator generator;
    sim::RandomStream stream;
    sim::RandomStream link_stream;
    std::optional<mobility::LinkSelector> selector;
    std::vector<NodeId> peers;
    Millis probe = 0;
    fel::FelAgent* agent = nullptr;
};

class ArmRun {
public:
    ArmRun(const ScenarioConfig& config, const ArmConfig& arm, std::uint64_t seed)
        : config_(config),
          arm_(arm),
          seed_(seed),
          scenario_(config.name + "-" + arm.name),
          topology_(build_community(arm_topology(config, arm))),
          catalog_(build_catalog(config.catalog)),
          network_(topology_, catalog_, engine_,
                   ccn::NetworkOptions{config.pit_lifetime_ms, arm.fog_offload}),
          mobility_(network_, config.fel.recent_window) {
        topology_.validate();
        domains_ = form_fog_domains(topology_, config.fel.ticket_threshold);
        for (const auto& d : domains_) store_.register_domain(d.domain_id);
        if (arm_.fel) make_agents();
        make_requesters();
    }

    MetricsTable run() {
        const SimTime end{config_.duration_ms};
        for (auto& agent : agents_) agent->start(network_, store_, end);
        if (arm_.fel) place_learning_tasks();
        schedule_handovers();
        for (auto& r : requesters_) issue_next(*r, SimTime{0});

        engine_.run_until(end + 2 * network_.pit_lifetime());

        const auto& c = network_.counters();
        if (c.issued != c.delivered + c.request_expiries + network_.in_flight()) {
            throw InvariantViolation(scenario_ + ": issued " + std::to_string(c.issued) + " != delivered " +
                                     std::to_string(c.delivered) + " + expired " + std::to_string(c.request_expiries) +
                                     " + in flight " + std::to_string(network_.in_flight()));
        }
        emit_counters();
        emit_epochs();
        sort_rows(table_.rows);
        return std::move(table_);
    }

private:
    void make_agents() {
        for (const auto& domain : domains_) {
            std::vector<NodeId> targets;
            for (const NodeId m : domain.members) {
                const auto& n = topology_.node(m);
                if (n.kind == NodeKind::FogEntity && n.cs_capacity > 0) targets.push_back(m);
            }
            if (targets.empty() && topology_.node(domain.anchor).cs_capacity > 0) targets.push_back(domain.anchor);
            if (targets.empty()) continue;

            std::vector<NodeId> served;
            for (const NodeId r : topology_.nodes_of_kind(NodeKind::Requester)) {
                if (topology_.base_station_of(network_.attachment(r)) == domain.anchor) served.push_back(r);
            }
            if (arm_.grants) {
                for (const NodeId r : served) store_.grant_access(r, domain.domain_id, SimTime{0});
            }
            auto agent = std::make_unique<fel::FelAgent>(domain, served, targets, config_.fel.agent,
                                                         sim::RandomStream(seed_, "agent/" + domain.domain_id));
            agent_at_.emplace(domain.anchor, agent.get());
            agents_.push_back(std::move(agent));
        }
    }

    void make_requesters() {
        for (const auto& rc : config_.requesters) {
            const NodeId id = topology_.require(rc.label);
            workload::RequesterProfile profile{id, workload::ZipfModel{}, rc.cls};
            if (const auto* z = std::get_if<workload::ZipfModel>(&rc.model)) {
                profile.model = *z;
            } else {
                const auto& p = std::get<PeriodicSpec>(rc.model);
                workload::PeriodicModel m{p.period_ms, {}};
                for (const auto& n : p.playlist) m.playlist.push_back(ccn::ContentName::parse(n));
                profile.model = std::move(m);
            }
            auto state = std::make_unique<RequesterState>(RequesterState{
                id, rc.label, workload::RequestGenerator(profile, catalog_),
                sim::RandomStream(seed_, "workload/" + rc.label), sim::RandomStream(seed_, "link/" + rc.label),
                std::nullopt, topology_.d2d_peers(id), d2d_probe_latency(topology_, id), nullptr});
            if (arm_.link_selection) {
                state->selector.emplace(id, config_.link_epsilon, true, !state->peers.empty());
            }
            if (const auto bs = topology_.base_station_of(network_.attachment(id))) {
                if (const auto it = agent_at_.find(*bs); it != agent_at_.end()) state->agent = it->second;
            }
            requesters_.push_back(std::move(state));
        }
    }

    static Millis d2d_probe_latency(const Topology& t, NodeId id) { return mobility::d2d_probe_latency(t, id); }

    void issue_next(RequesterState& r, SimTime now) {
        auto next = r.generator.next_request(now, r.stream);
        if (next.fire_at.ms() >= config_.duration_ms) return;
        engine_.schedule(next.fire_at, sim::EventKind::InterestIssue,
                         [this, &r, name = std::move(next.name)] { issue(r, name); });
    }

    void issue(RequesterState& r, const ccn::ContentName& name) {
        const SimTime now = engine_.now();
        store_.log_issue(r.id, name, now);

        ccn::ExpressOptions options;
        std::optional<mobility::LinkArm> arm;
        if (const auto old_ap = mobility_.take_redirect(r.id, name)) {
            options.first_hop = *old_ap;
            ++redirected_requests_;
        } else if (r.selector && !network_.node(r.id).cs.contains(name)) {
            arm = r.selector->select(r.link_stream);
            if (*arm == mobility::LinkArm::D2D) {
                ++d2d_selected_;
                if (const auto peer = mobility::d2d_availability(network_, r.peers, name)) {
                    options.first_hop = *peer;
                } else {
                    ++d2d_misses_;
                    options.start_delay = r.probe;
                }
            }
        }
        mobility_.note_request(r.id, name);

        std::string candidate;
        if (r.agent) {
            if (const auto c = r.agent->active_candidate()) candidate = fel::to_string(*c);
        }
        network_.express(
            r.id, name,
            [this, &r, arm, candidate = std::move(candidate)](const ccn::RequestOutcome& o) {
                if (o.satisfied()) record(r, o, candidate);
                if (o.satisfied() && arm) r.selector->record(*arm, o.latency());
                issue_next(r, engine_.now());
            },
            options);
    }

    void record(const RequesterState& r, const ccn::RequestOutcome& o, const std::string& candidate) {
        if (o.latency() < 0) throw InvariantViolation("negative latency for request " + std::to_string(o.request_id));
        store_.log_retrieval(fel::RetrievalRecord{r.id, o.name, o.issued_at, *o.satisfied_at, o.served_by});
        MetricsRow row;
        row.scenario = scenario_;
        row.run_seed = seed_;
        row.requester = r.label;
        row.request_id = o.request_id;
        row.content_name = o.name.str();
        row.issue_ms = o.issued_at.ms();
        row.satisfy_ms = o.satisfied_at->ms();
        row.latency_ms = o.latency();
        row.served_by = topology_.node(o.served_by).label;
        row.cache_hit_node_kind = std::string(to_string(topology_.node(o.served_by).kind));
        row.link_kind = o.first_hop ? std::string(to_string(*o.first_hop)) : "local";
        if (!config_.handovers.empty()) row.scheme = std::string(mobility::to_string(arm_.scheme));
        row.epoch_candidate = candidate;
        table_.rows.push_back(std::move(row));
    }

    void schedule_handovers() {
        for (const auto& h : config_.handovers) {
            const NodeId req = topology_.require(h.requester);
            const NodeId to = topology_.require(h.to_ap);
            engine_.schedule(SimTime{h.at_ms}, sim::EventKind::Handover, [this, req, to] {
                std::function<void()> epoch;
                if (const auto bs = topology_.base_station_of(to)) {
                    if (const auto it = agent_at_.find(*bs); it != agent_at_.end()) {
                        epoch = [this, agent = it->second] { agent->trigger(network_, store_); };
                    }
                }
                const auto result = mobility_.handover(req, to, arm_.scheme, epoch);
                ++handovers_;
                redirects_ += result.redirected.size();
            });
        }
    }

    void place_learning_tasks() {
        if (config_.fel.tasks.empty()) return;
        const auto placement = fel::place_tasks(config_.fel.tasks, domains_, config_.fel.cost);
        placements_assigned_ = placement.assignment.size();
        placements_rejected_ = placement.rejected.size();
    }

    void emit_counters() {
        const auto& c = network_.counters();
        std::uint64_t epochs = 0;
        for (const auto& a : agents_) epochs += a->epochs();
        const std::pair<const char*, std::uint64_t> values[] = {
            {"issued", c.issued},
            {"delivered", c.delivered},
            {"request_expiries", c.request_expiries},
            {"pit_entry_expiries", c.pit_entry_expiries},
            {"unsolicited_drops", c.unsolicited_drops},
            {"detached_drops", c.detached_drops},
            {"prefetches", c.prefetches},
            {"prefetch_expiries", c.prefetch_expiries},
            {"pin_rejections", c.pin_rejections},
            {"handovers", handovers_},
            {"redirects", redirects_},
            {"redirected_requests", redirected_requests_},
            {"d2d_selected", d2d_selected_},
            {"d2d_misses", d2d_misses_},
            {"epochs", epochs},
            {"placements_assigned", placements_assigned_},
            {"placements_rejected", placements_rejected_},
            {"in_flight_at_end", network_.in_flight()},
        };
        for (const auto& [name, value] : values) table_.counters.push_back(CounterRow{scenario_, seed_, name, value});
    }

    void emit_epochs() {
        for (const auto& agent : agents_) {
            for (const auto& e : agent->log()) {
                std::string pins;
                for (const auto& [node, names] : e.pins) {
                    for (const auto& n : names) {
                        if (!pins.empty()) pins += ' ';
                        pins += topology_.node(node).label + ":" + n.str();
                    }
                }
                table_.epochs.push_back(EpochRow{scenario_, seed_, agent->domain_id(), e.epoch, e.taken_at.ms(),
                                                 fel::to_string(e.candidate), e.reward.value, e.reward.initial,
                                                 e.reward.carried, e.epsilon, e.event_driven, std::move(pins)});
            }
        }
    }

    const ScenarioConfig& config_;
    const ArmConfig& arm_;
    std::uint64_t seed_;
    std::string scenario_;

    Topology topology_;
    ccn::ContentCatalog catalog_;
    sim::Engine engine_;
    ccn::CcnNetwork network_;
    mobility::MobilityManager mobility_;
    fel::RecordStore store_;
    std::vector<FogDomain> domains_;
    std::vector<std::unique_ptr<fel::FelAgent>> agents_;
    std::map<NodeId, fel::FelAgent*> agent_at_;
    std::vector<std::unique_ptr<RequesterState>> requesters_;

    std::uint64_t handovers_ = 0;
    std::uint64_t redirects_ = 0;
    std::uint64_t redirected_requests_ = 0;
    std::uint64_t d2d_selected_ = 0;
    std::uint64_t d2d_misses_ = 0;
    std::uint64_t placements_assigned_ = 0;
    std::uint64_t placements_rejected_ = 0;
    MetricsTable table_;
};

MetricsTable merge_seed(std::vector<MetricsTable>& arms) {
    MetricsTable out;
    for (auto& t : arms) out.append(std::move(t));
    return out;
}

} // namespace

MetricsTable run_arm(const ScenarioConfig& config, const ArmConfig& arm, std::uint64_t seed) {
    ArmRun run(config, arm, seed);
    return run.run();
}

MetricsTable run_scenario(const ScenarioConfig& config) { return run_seeds(config, {config.seed}, 1); }

MetricsTable run_seeds(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds, unsigned jobs,
                       const std::function<void(std::uint64_t, const std::string&)>& progress) {
    validate(config);
    const std::size_t arms = config.arms.size();
    std::vector<MetricsTable> results(seeds.size() * arms);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (std::size_t i = next++; i < results.size(); i = next++) {
            try {
                const auto seed = seeds[i / arms];
                const auto& arm = config.arms[i % arms];
                results[i] = run_arm(config, arm, seed);
                if (progress) progress(seed, arm.name);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = results.size();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(results.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    MetricsTable out;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        std::vector<MetricsTable> block(std::make_move_iterator(results.begin() + s * arms),
                                        std::make_move_iterator(results.begin() + (s + 1) * arms));
        out.append(merge_seed(block));
    }
    // Counters and epochs stay in seed blocks; metrics rows are ordered across seeds too.
    sort_rows(out.rows);
    return out;
}

} // namespace felsim::harness
