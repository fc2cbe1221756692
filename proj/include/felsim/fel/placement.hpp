#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "felsim/topology/topology.hpp"

namespace felsim::fel {

struct LearningTask {
    std::string task_id;
    std::uint64_t cycles = 1;
    std::uint64_t data_bytes = 0;
    bool delay_sensitive = false;
};

struct DomainCost {
    double compute_price = 1.0;  // per cycle
    double caching_cost = 0.0;   // per byte
    double comm_delay_ms = 0.0;
};

struct CostModel {
    std::map<std::string, DomainCost> per_domain;
    // Used for domains without an explicit entry.
    DomainCost fallback;
    double comm_delay_penalty = 1.0;

    const DomainCost& for_domain(const std::string& domain_id) const;
};

enum class RejectReason { Capacity, Contention };

std::string_view to_string(RejectReason r);

struct Shard {
    NodeId member;
    std::uint64_t bytes = 0;
};

/// Model parallelism across domains (one domain per task) and data
/// parallelism inside a domain (data_bytes split over its members).
struct Placement {
    std::map<std::string, std::string> assignment;
    std::map<std::string, RejectReason> rejected;
    std::map<std::string, std::vector<Shard>> shards;
    double total_cost = 0.0;
    bool exact = false;
};

// Instances at or below this many task-domain pairs are solved by enumeration.
inline constexpr std::size_t kExactPlacementLimit = 12;

double task_cost(const LearningTask& task, const DomainCost& cost, double comm_delay_penalty);

/// Exact enumeration for small instances (most tasks placed, then least total
/// cost); otherwise greedy by descending cycles onto the cheapest feasible domain.
/// Throws InvalidSpec for zero-cycle tasks or duplicate task ids.
Placement place_tasks(std::span<const LearningTask> tasks, std::span<const FogDomain> domains, const CostModel& cost_model);

} // namespace felsim::fel
