#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "felsim/ccn/network.hpp"
#include "felsim/fel/records.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::fel {

/// Network learning interface view of one domain over the window [window_start, taken_at).
struct NetworkSnapshot {
    SimTime window_start;
    SimTime taken_at;
    std::map<NodeId, std::vector<ccn::ContentName>> cache_contents;
    std::map<NodeId, std::uint64_t> hit_counts;
    std::map<ccn::ContentName, std::uint64_t> request_counts;
    std::map<NodeId, double> mean_latency;
    std::uint64_t satisfied = 0;
    Millis latency_sum = 0;
};

struct Reward {
    double value = 0.0;
    bool initial = false;
    bool carried = false;

    static Reward initial_reward() { return Reward{0.0, true, false}; }
};

/// Negative mean latency of the window's satisfied requests. An empty window
/// carries `previous` forward with the carried flag set.
Reward compute_reward(const NetworkSnapshot& snapshot, const Reward& previous);

/// Weights of the linear scoring rule: alpha on aggregate demand, beta on
/// demand from requesters that granted access.
struct Candidate {
    double alpha = 1.0;
    double beta = 0.0;
    bool operator==(const Candidate&) const = default;
};

std::string to_string(const Candidate& c);
/// Parses "alpha:beta".
Candidate parse_candidate(std::string_view text);

struct EpsilonSchedule {
    enum class Kind { Constant, InverseEpoch };
    Kind kind = Kind::InverseEpoch;
    double value = 0.0;

    /// epoch counts from 1.
    double at(std::uint64_t epoch) const;
    static EpsilonSchedule constant(double e) { return {Kind::Constant, e}; }
    static EpsilonSchedule inverse_epoch() { return {Kind::InverseEpoch, 0.0}; }
};

/// Epsilon-greedy choice over a finite candidate set. Candidates without
/// observations are valued at the initial reward.
class CandidateSelector {
public:
    explicit CandidateSelector(std::size_t candidates);

    std::size_t select(double epsilon, sim::RandomStream& stream) const;
    void record(std::size_t candidate, double reward);

    double mean(std::size_t candidate) const;
    std::uint64_t count(std::size_t candidate) const { return counts_.at(candidate); }
    std::size_t size() const noexcept { return counts_.size(); }

private:
    std::vector<double> sums_;
    std::vector<std::uint64_t> counts_;
};

/// Top-k by score (descending, then canonical name). Only positive scores
/// compete; leftover slots keep names from `prior` in order.
std::vector<ccn::ContentName> rank_top_k(const std::map<ccn::ContentName, double>& scores, std::size_t k,
                                         const std::vector<ccn::ContentName>& prior = {});

struct CachingStrategy {
    std::string domain_id;
    std::map<NodeId, std::set<ccn::ContentName>> pins;
    std::size_t k = 0;
    Candidate params;
};

struct AgentConfig {
    std::size_t k = 8;
    Millis epoch_ms = 1000;
    EpsilonSchedule epsilon = EpsilonSchedule::inverse_epoch();
    std::vector<Candidate> candidates{{1, 0}, {1, 1}, {1, 4}, {0, 1}};
};

struct EpochLog {
    std::uint64_t epoch = 0;
    SimTime taken_at;
    bool event_driven = false;
    double epsilon = 0.0;
    Candidate candidate;
    Reward reward;
    std::map<NodeId, std::set<ccn::ContentName>> pins;
};

/// Learning agent of one fog domain.
///
/// Each epoch: snapshot the window, score the reward of the strategy that ran
/// during it, pick (alpha, beta) epsilon-greedily, rank names, and push the
/// resulting pins to the domain's caches.
class FelAgent {
public:
    FelAgent(FogDomain domain, std::vector<NodeId> requesters, std::vector<NodeId> pin_targets, AgentConfig config,
             sim::RandomStream stream);

    const std::string& domain_id() const noexcept { return domain_.domain_id; }
    const FogDomain& domain() const noexcept { return domain_; }
    const std::set<NodeId>& requesters() const noexcept { return requesters_; }
    const std::vector<NodeId>& pin_targets() const noexcept { return pin_targets_; }
    const AgentConfig& config() const noexcept { return config_; }

    NetworkSnapshot take_snapshot(const ccn::CcnNetwork& network, const RecordStore& store, SimTime now) const;

    /// Credits the last candidate with `reward`, picks the next candidate and
    /// ranks pins from the snapshot plus the granted requesters' records.
    CachingStrategy update_strategy(const ccn::CcnNetwork& network, const NetworkSnapshot& snapshot,
                                    const Reward& reward, const std::vector<IssueRecord>& granted_records);

    /// Snapshot, reward, strategy, apply pins. PinOverflow propagates.
    void run_learning_epoch(ccn::CcnNetwork& network, const RecordStore& store, SimTime now, bool event_driven = false);

    /// Schedules periodic epochs every epoch_ms up to and including `until`.
    void start(ccn::CcnNetwork& network, const RecordStore& store, SimTime until);
    /// Event-driven plan: an epoch at the current clock.
    void trigger(ccn::CcnNetwork& network, const RecordStore& store);

    std::optional<Candidate> active_candidate() const;
    const Reward& last_reward() const noexcept { return last_reward_; }
    const CandidateSelector& selector() const noexcept { return selector_; }
    const std::vector<EpochLog>& log() const noexcept { return log_; }
    std::uint64_t epochs() const noexcept { return epoch_; }

private:
    void schedule_periodic(ccn::CcnNetwork& network, const RecordStore& store, SimTime at, SimTime until);

    FogDomain domain_;
    std::set<NodeId> requesters_;
    std::vector<NodeId> pin_targets_;
    AgentConfig config_;
    sim::RandomStream stream_;

    CandidateSelector selector_;
    std::optional<std::size_t> active_;
    Reward last_reward_ = Reward::initial_reward();
    std::uint64_t epoch_ = 0;
    SimTime window_start_{0};
    std::map<NodeId, std::uint64_t> hits_at_window_start_;
    std::map<NodeId, std::vector<ccn::ContentName>> current_pins_;
    std::vector<EpochLog> log_;
};

} // namespace felsim::fel
