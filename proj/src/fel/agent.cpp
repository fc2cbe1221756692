#include "felsim/fel/agent.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "felsim/error.hpp"

namespace felsim::fel {

Reward compute_reward(const NetworkSnapshot& snapshot, const Reward& previous) {
    if (snapshot.satisfied == 0) return Reward{previous.value, previous.initial, true};
    return Reward{-static_cast<double>(snapshot.latency_sum) / static_cast<double>(snapshot.satisfied), false, false};
}

std::string to_string(const Candidate& c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g:%g", c.alpha, c.beta);
    return buf;
}

Candidate parse_candidate(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw InvalidSpec("candidate must look like alpha:beta, got '" + std::string(text) + "'");
    try {
        const Candidate c{std::stod(std::string(text.substr(0, colon))), std::stod(std::string(text.substr(colon + 1)))};
        if (c.alpha < 0 || c.beta < 0) throw InvalidSpec("candidate weights must be non-negative");
        return c;
    } catch (const std::logic_error&) {
        throw InvalidSpec("candidate must look like alpha:beta, got '" + std::string(text) + "'");
    }
}

double EpsilonSchedule::at(std::uint64_t epoch) const {
    if (kind == Kind::Constant) return value;
    return epoch == 0 ? 1.0 : 1.0 / static_cast<double>(epoch);
}

CandidateSelector::CandidateSelector(std::size_t candidates) : sums_(candidates, 0.0), counts_(candidates, 0) {
    if (candidates == 0) throw InvalidSpec("candidate grid is empty");
}

double CandidateSelector::mean(std::size_t candidate) const {
    const auto n = counts_.at(candidate);
    return n == 0 ? Reward::initial_reward().value : sums_[candidate] / static_cast<double>(n);
}

std::size_t CandidateSelector::select(double epsilon, sim::RandomStream& stream) const {
    if (stream.next_uniform() < epsilon) return static_cast<std::size_t>(stream.next_below(counts_.size()));
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts_.size(); ++i) {
        if (mean(i) > mean(best)) best = i;
    }
    return best;
}

void CandidateSelector::record(std::size_t candidate, double reward) {
    sums_.at(candidate) += reward;
    ++counts_.at(candidate);
}

std::vector<ccn::ContentName> rank_top_k(const std::map<ccn::ContentName, double>& scores, std::size_t k,
                                         const std::vector<ccn::ContentName>& prior) {
    std::vector<std::pair<double, ccn::ContentName>> positive;
    for (const auto& [name, score] : scores) {
        if (score > 0.0) positive.emplace_back(score, name);
    }
    std::stable_sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<ccn::ContentName> out;
    for (const auto& [score, name] : positive) {
        if (out.size() == k) break;
        out.push_back(name);
    }
    for (const auto& name : prior) {
        if (out.size() == k) break;
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
    return out;
}

FelAgent::FelAgent(FogDomain domain, std::vector<NodeId> requesters, std::vector<NodeId> pin_targets,
                   AgentConfig config, sim::RandomStream stream)
    : domain_(std::move(domain)),
      requesters_(requesters.begin(), requesters.end()),
      pin_targets_(std::move(pin_targets)),
      config_(std::move(config)),
      stream_(std::move(stream)),
      selector_(config_.candidates.size()) {
    if (config_.epoch_ms <= 0) throw InvalidSpec("epoch period must be positive");
    for (const auto& c : config_.candidates) {
        if (c.alpha < 0 || c.beta < 0) throw InvalidSpec("candidate weights must be non-negative");
    }
}

std::optional<Candidate> FelAgent::active_candidate() const {
    if (!active_) return std::nullopt;
    return config_.candidates[*active_];
}

NetworkSnapshot FelAgent::take_snapshot(const ccn::CcnNetwork& network, const RecordStore& store, SimTime now) const {
    NetworkSnapshot snap;
    snap.window_start = window_start_;
    snap.taken_at = now;

    std::set<NodeId> nodes(domain_.members.begin(), domain_.members.end());
    nodes.insert(domain_.anchor);
    nodes.insert(pin_targets_.begin(), pin_targets_.end());
    for (const NodeId id : nodes) {
        const auto& n = network.node(id);
        snap.cache_contents[id] = n.cs.entries();
        const auto base = hits_at_window_start_.find(id);
        snap.hit_counts[id] = n.counters.cs_hits - (base == hits_at_window_start_.end() ? 0 : base->second);
    }

    for (const auto& r : store.issues_in(window_start_, now)) {
        if (requesters_.contains(r.requester)) ++snap.request_counts[r.name];
    }
    std::map<NodeId, std::pair<Millis, std::uint64_t>> per_requester;
    for (const auto& r : store.retrievals_in(window_start_, now)) {
        if (!requesters_.contains(r.requester)) continue;
        const Millis latency = r.satisfied_at - r.issued_at;
        auto& acc = per_requester[r.requester];
        acc.first += latency;
        ++acc.second;
        snap.latency_sum += latency;
        ++snap.satisfied;
    }
    for (const auto& [req, acc] : per_requester) {
        snap.mean_latency[req] = static_cast<double>(acc.first) / static_cast<double>(acc.second);
    }
    return snap;
}

CachingStrategy FelAgent::update_strategy(const ccn::CcnNetwork& network, const NetworkSnapshot& snapshot,
                                          const Reward& reward, const std::vector<IssueRecord>& granted_records) {
    if (active_ && !reward.initial && !reward.carried) selector_.record(*active_, reward.value);
    ++epoch_;
    const std::size_t choice = selector_.select(config_.epsilon.at(epoch_), stream_);
    active_ = choice;
    const Candidate params = config_.candidates[choice];

    std::map<ccn::ContentName, double> scores;
    for (const auto& [name, count] : snapshot.request_counts) scores[name] += params.alpha * static_cast<double>(count);
    for (const auto& r : granted_records) scores[r.name] += params.beta;

    CachingStrategy strategy{domain_.domain_id, {}, config_.k, params};
    for (const NodeId target : pin_targets_) {
        const std::size_t budget = std::min(config_.k, network.node(target).cs.capacity());
        auto ranked = rank_top_k(scores, budget, current_pins_[target]);
        strategy.pins[target] = {ranked.begin(), ranked.end()};
        current_pins_[target] = std::move(ranked);
    }
    return strategy;
}

void FelAgent::run_learning_epoch(ccn::CcnNetwork& network, const RecordStore& store, SimTime now, bool event_driven) {
    const auto snapshot = take_snapshot(network, store, now);
    // The first epoch has no evaluated strategy yet; it starts from the initial reward.
    const Reward reward = epoch_ == 0 ? Reward::initial_reward() : compute_reward(snapshot, last_reward_);
    const auto granted = store.granted_issues(domain_.domain_id, window_start_, now);
    auto strategy = update_strategy(network, snapshot, reward, granted);
    for (const auto& [node, pins] : strategy.pins) network.apply_pins(node, pins);

    log_.push_back(EpochLog{epoch_, now, event_driven, config_.epsilon.at(epoch_), strategy.params, reward,
                            std::move(strategy.pins)});
    last_reward_ = reward;
    window_start_ = now;
    for (const auto& [id, hits] : snapshot.hit_counts) hits_at_window_start_[id] = network.node(id).counters.cs_hits;
}

void FelAgent::schedule_periodic(ccn::CcnNetwork& network, const RecordStore& store, SimTime at, SimTime until) {
    if (at > until) return;
    network.engine().schedule(at, sim::EventKind::LearningEpoch, [this, &network, &store, at, until] {
        run_learning_epoch(network, store, at, false);
        schedule_periodic(network, store, at + config_.epoch_ms, until);
    });
}

void FelAgent::start(ccn::CcnNetwork& network, const RecordStore& store, SimTime until) {
    schedule_periodic(network, store, network.engine().now() + config_.epoch_ms, until);
}

void FelAgent::trigger(ccn::CcnNetwork& network, const RecordStore& store) {
    network.engine().schedule(network.engine().now(), sim::EventKind::LearningEpoch, [this, &network, &store] {
        run_learning_epoch(network, store, network.engine().now(), true);
    });
}

} // namespace felsim::fel
