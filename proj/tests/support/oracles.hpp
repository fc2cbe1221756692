#pragma once

// Independent reference computations used by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "felsim/ccn/name.hpp"
#include "felsim/fel/placement.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/workload/workload.hpp"

namespace felsim::testing {

// Upper 1% points of the chi-square distribution, from standard tables.
inline double chi_square_critical_001(std::size_t dof) {
    switch (dof) {
        case 3: return 11.345;
        case 99: return 134.642;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Zipf pmf straight from the definition: i^-s / H_{N,s}.
inline std::vector<double> zipf_pmf(std::size_t n, double s) {
    double h = 0.0;
    for (std::size_t i = 1; i <= n; ++i) h += std::pow(static_cast<double>(i), -s);
    std::vector<double> p(n);
    for (std::size_t i = 1; i <= n; ++i) p[i - 1] = std::pow(static_cast<double>(i), -s) / h;
    return p;
}

struct ChiSquare {
    double statistic = 0.0;
    double critical = 0.0;
    bool passes() const { return statistic < critical; }
};

inline ChiSquare zipf_chi_square(std::size_t n, double s, std::size_t samples, std::uint64_t seed) {
    const workload::ZipfSampler sampler(n, s);
    sim::RandomStream rng(seed, "zipf-fidelity");
    std::vector<std::uint64_t> counts(n, 0);
    for (std::size_t i = 0; i < samples; ++i) ++counts[sampler.sample(rng) - 1];
    const auto pmf = zipf_pmf(n, s);
    ChiSquare out;
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = pmf[i] * static_cast<double>(samples);
        const double diff = static_cast<double>(counts[i]) - expected;
        out.statistic += diff * diff / expected;
    }
    out.critical = chi_square_critical_001(n - 1);
    return out;
}

// Top-k by (count desc, name asc) over a raw log.
inline std::vector<ccn::ContentName> brute_force_top_k(const std::vector<ccn::ContentName>& log, std::size_t k) {
    std::map<ccn::ContentName, std::uint64_t> counts;
    for (const auto& n : log) ++counts[n];
    std::vector<std::pair<std::uint64_t, ccn::ContentName>> v;
    for (const auto& [n, c] : counts) v.emplace_back(c, n);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<ccn::ContentName> out;
    for (std::size_t i = 0; i < v.size() && i < k; ++i) out.push_back(v[i].second);
    return out;
}

struct BruteForcePlacement {
    std::size_t placed = 0;
    double cost = 0.0;
};

// Full enumeration by recursion: most tasks placed, then least total cost.
// Costs are summed in task order so totals match bit for bit.
inline BruteForcePlacement brute_force_placement(std::span<const fel::LearningTask> tasks,
                                                 std::span<const FogDomain> domains, const fel::CostModel& model) {
    BruteForcePlacement best;
    bool have = false;
    std::vector<int> pick(tasks.size(), -1);
    std::vector<std::uint64_t> load(domains.size(), 0);
    const auto recurse = [&](auto&& self, std::size_t t) -> void {
        if (t == tasks.size()) {
            std::size_t placed = 0;
            double cost = 0.0;
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                if (pick[i] < 0) continue;
                ++placed;
                const auto& d = domains[static_cast<std::size_t>(pick[i])];
                const auto& c = model.for_domain(d.domain_id);
                double x = c.compute_price * static_cast<double>(tasks[i].cycles) +
                           c.caching_cost * static_cast<double>(tasks[i].data_bytes);
                if (tasks[i].delay_sensitive) x += model.comm_delay_penalty * c.comm_delay_ms;
                cost += x;
            }
            if (!have || placed > best.placed || (placed == best.placed && cost < best.cost)) {
                best = {placed, cost};
                have = true;
            }
            return;
        }
        pick[t] = -1;
        self(self, t + 1);
        for (std::size_t d = 0; d < domains.size(); ++d) {
            if (load[d] + tasks[t].cycles > domains[d].capacity) continue;
            load[d] += tasks[t].cycles;
            pick[t] = static_cast<int>(d);
            self(self, t + 1);
            load[d] -= tasks[t].cycles;
        }
        pick[t] = -1;
    };
    recurse(recurse, 0);
    return best;
}

struct RandomPlacementCase {
    std::vector<fel::LearningTask> tasks;
    std::vector<FogDomain> domains;
    fel::CostModel model;
};

// Integer-valued prices keep every cost exactly representable.
inline RandomPlacementCase random_placement_case(sim::RandomStream& r) {
    RandomPlacementCase c;
    std::size_t n = 0, d = 0;
    do {
        n = 1 + r.next_below(6);
        d = 1 + r.next_below(6);
    } while (n * d > fel::kExactPlacementLimit);
    for (std::size_t i = 0; i < n; ++i) {
        c.tasks.push_back({"t" + std::to_string(i), 1 + r.next_below(12), r.next_below(1000), r.next_below(2) == 1});
    }
    for (std::size_t j = 0; j < d; ++j) {
        FogDomain dom;
        dom.domain_id = "d" + std::to_string(j);
        dom.anchor = NodeId(static_cast<std::uint32_t>(j));
        dom.members = {NodeId(static_cast<std::uint32_t>(j))};
        dom.capacity = r.next_below(25);
        c.domains.push_back(dom);
        c.model.per_domain[dom.domain_id] = fel::DomainCost{static_cast<double>(1 + r.next_below(5)),
                                                           static_cast<double>(r.next_below(3)),
                                                           static_cast<double>(r.next_below(40))};
    }
    c.model.comm_delay_penalty = static_cast<double>(1 + r.next_below(3));
    return c;
}

} // namespace felsim::testing
