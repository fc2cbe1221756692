#pragma once

#include <cstdint>
#include <string_view>

#include "felsim/ccn/name.hpp"
#include "felsim/sim/time.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::ccn {

// Demand traffic is issued by users; Prefetch traffic is issued by a node
// filling its pinned set. The two never share a PIT entry.
enum class TrafficClass : std::uint8_t { Demand, Prefetch };

std::string_view to_string(TrafficClass t);

struct Interest {
    ContentName name;
    // The user identifier travels beside the name, not inside it.
    NodeId requester;
    std::uint64_t nonce = 0;
    SimTime issued_at;
    TrafficClass traffic = TrafficClass::Demand;
};

struct Data {
    ContentName name;
    std::uint64_t size_bytes = 1;
    // Node that answered from its store (or the origin).
    NodeId producer;
    TrafficClass traffic = TrafficClass::Demand;
};

} // namespace felsim::ccn
