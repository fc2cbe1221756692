#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "felsim/ccn/catalog.hpp"
#include "felsim/ccn/content_store.hpp"
#include "felsim/ccn/packet.hpp"
#include "felsim/ccn/pit.hpp"

namespace felsim::ccn {

struct NodeCounters {
    std::uint64_t cs_hits = 0;
    std::uint64_t cs_misses = 0;
    std::uint64_t aggregated = 0;
    std::uint64_t forwarded = 0;
    std::uint64_t unsolicited = 0;
    std::uint64_t rejected_inserts = 0;
};

/// Forwarding state held by one node.
struct CcnNode {
    NodeId id;
    NodeKind kind = NodeKind::Requester;
    ContentStore cs;
    Pit pit;
    Fib fib;
    // Origin nodes answer every catalog name.
    const ContentCatalog* origin = nullptr;
    // Co-located cache consulted before the FIB for demand traffic
    // (a base station steering toward its fog entity).
    std::optional<NodeId> offload;
    const ContentStore* offload_cs = nullptr;
    NodeCounters counters;
};

struct ReplyData {
    Data data;
};
struct Aggregate {};
struct Forward {
    NodeId next_hop;
};
using ForwardingAction = std::variant<ReplyData, Aggregate, Forward>;

/// Store hit -> reply; pending entry -> aggregate; otherwise create a PIT entry
/// and forward. `from` is the face the Interest arrived on (the node itself
/// for local origination). Throws NoRoute when the FIB has no match.
ForwardingAction on_interest(CcnNode& node, const Interest& interest, NodeId from, SimTime now, Millis pit_lifetime);

struct DataActions {
    // Copies to send, one per downstream, including local (face == node id).
    std::vector<Downstream> deliveries;
    std::optional<EvictionOutcome> cached;
    bool unsolicited = false;
};

/// Consumes the matching PIT entry and offers the item to the store.
DataActions on_data(CcnNode& node, const Data& data, SimTime now);

} // namespace felsim::ccn
