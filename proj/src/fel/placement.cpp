#include "felsim/fel/placement.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "felsim/error.hpp"

namespace felsim::fel {

const DomainCost& CostModel::for_domain(const std::string& domain_id) const {
    const auto it = per_domain.find(domain_id);
    return it == per_domain.end() ? fallback : it->second;
}

std::string_view to_string(RejectReason r) { return r == RejectReason::Capacity ? "capacity" : "contention"; }

double task_cost(const LearningTask& task, const DomainCost& cost, double comm_delay_penalty) {
    double c = cost.compute_price * static_cast<double>(task.cycles) +
               cost.caching_cost * static_cast<double>(task.data_bytes);
    if (task.delay_sensitive) c += comm_delay_penalty * cost.comm_delay_ms;
    return c;
}

namespace {

constexpr std::size_t kRejected = static_cast<std::size_t>(-1);

std::vector<Shard> shard(const LearningTask& task, const FogDomain& domain) {
    std::vector<Shard> out;
    const auto m = domain.members.size();
    if (m == 0) return out;
    const auto base = task.data_bytes / m;
    auto extra = task.data_bytes % m;
    for (const NodeId member : domain.members) {
        out.push_back(Shard{member, base + (extra > 0 ? 1 : 0)});
        if (extra > 0) --extra;
    }
    return out;
}

Placement finish(std::span<const LearningTask> tasks, std::span<const FogDomain> domains,
                 const std::vector<std::size_t>& choice, const std::vector<std::vector<double>>& cost, bool exact) {
    Placement p;
    p.exact = exact;
    std::uint64_t max_capacity = 0;
    for (const auto& d : domains) max_capacity = std::max(max_capacity, d.capacity);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (choice[t] == kRejected) {
            p.rejected[tasks[t].task_id] = tasks[t].cycles > max_capacity ? RejectReason::Capacity : RejectReason::Contention;
            continue;
        }
        const auto& d = domains[choice[t]];
        p.assignment[tasks[t].task_id] = d.domain_id;
        p.shards[tasks[t].task_id] = shard(tasks[t], d);
        p.total_cost += cost[t][choice[t]];
    }
    return p;
}

} // namespace

Placement place_tasks(std::span<const LearningTask> tasks, std::span<const FogDomain> domains, const CostModel& cost_model) {
    std::set<std::string> ids;
    for (const auto& t : tasks) {
        if (t.cycles == 0) throw InvalidSpec("task '" + t.task_id + "' has zero cycles");
        if (!ids.insert(t.task_id).second) throw InvalidSpec("duplicate task id '" + t.task_id + "'");
    }
    const std::size_t n = tasks.size();
    const std::size_t d = domains.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(d));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t j = 0; j < d; ++j) {
            cost[t][j] = task_cost(tasks[t], cost_model.for_domain(domains[j].domain_id), cost_model.comm_delay_penalty);
        }
    }

    std::vector<std::size_t> choice(n, kRejected);
    if (n == 0) return finish(tasks, domains, choice, cost, true);

    if (n * d <= kExactPlacementLimit) {
        // Odometer over {domain 0..d-1, rejected} per task; task 0 is the most significant digit.
        std::vector<std::size_t> digit(n, 0);
        std::vector<std::size_t> best = choice;
        std::size_t best_placed = 0;
        double best_cost = 0.0;
        for (;;) {
            std::vector<std::uint64_t> used(d, 0);
            bool feasible = true;
            std::size_t placed = 0;
            double total = 0.0;
            for (std::size_t t = 0; t < n && feasible; ++t) {
                if (digit[t] == d) continue;
                used[digit[t]] += tasks[t].cycles;
                feasible = used[digit[t]] <= domains[digit[t]].capacity;
                ++placed;
                total += cost[t][digit[t]];
            }
            if (feasible && (placed > best_placed || (placed == best_placed && placed > 0 && total < best_cost))) {
                best_placed = placed;
                best_cost = total;
                for (std::size_t t = 0; t < n; ++t) best[t] = digit[t] == d ? kRejected : digit[t];
            }
            std::size_t pos = n;
            while (pos > 0) {
                --pos;
                if (++digit[pos] <= d) break;
                digit[pos] = 0;
                if (pos == 0) return finish(tasks, domains, best, cost, true);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tasks[a].cycles > tasks[b].cycles; });
    std::vector<std::uint64_t> used(d, 0);
    for (const std::size_t t : order) {
        std::size_t pick = kRejected;
        for (std::size_t j = 0; j < d; ++j) {
            if (used[j] + tasks[t].cycles > domains[j].capacity) continue;
            if (pick == kRejected || cost[t][j] < cost[t][pick]) pick = j;
        }
        if (pick != kRejected) used[pick] += tasks[t].cycles;
        choice[t] = pick;
    }
    return finish(tasks, domains, choice, cost, false);
}

} // namespace felsim::fel
