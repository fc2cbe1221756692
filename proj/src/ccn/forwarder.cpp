#include "felsim/ccn/forwarder.hpp"

#include <algorithm>

#include "felsim/error.hpp"

namespace felsim::ccn {

ForwardingAction on_interest(CcnNode& node, const Interest& interest, NodeId from, SimTime now, Millis pit_lifetime) {
    if (node.origin) {
        if (const auto* item = node.origin->find(interest.name)) {
            ++node.counters.cs_hits;
            return ReplyData{Data{interest.name, item->size_bytes, node.id, interest.traffic}};
        }
    } else if (node.cs.contains(interest.name)) {
        ++node.counters.cs_hits;
        node.cs.touch(interest.name, now);
        return ReplyData{Data{interest.name, node.cs.size_of(interest.name), node.id, interest.traffic}};
    }
    ++node.counters.cs_misses;

    const Downstream ds{from, interest.nonce};
    if (auto* entry = node.pit.find(interest.name, interest.traffic)) {
        if (std::find(entry->downstreams.begin(), entry->downstreams.end(), ds) == entry->downstreams.end()) {
            entry->downstreams.push_back(ds);
        }
        ++node.counters.aggregated;
        return Aggregate{};
    }

    std::optional<NodeId> next;
    if (interest.traffic == TrafficClass::Demand && node.offload && node.offload_cs && from != *node.offload &&
        node.offload_cs->is_pinned(interest.name)) {
        next = node.offload;
    } else {
        next = node.fib.lookup(interest.name);
    }
    if (!next) throw NoRoute("no route for " + interest.name.str() + " at node " + std::to_string(node.id.index()));

    node.pit.create(interest.name, interest.traffic, ds, now, pit_lifetime);
    ++node.counters.forwarded;
    return Forward{*next};
}

DataActions on_data(CcnNode& node, const Data& data, SimTime now) {
    DataActions actions;
    auto* entry = node.pit.find(data.name, data.traffic);
    if (!entry) {
        ++node.counters.unsolicited;
        actions.unsolicited = true;
        return actions;
    }
    actions.deliveries = std::move(entry->downstreams);
    node.pit.erase(data.name, data.traffic);
    if (!node.origin) {
        actions.cached = node.cs.insert(data.name, now, data.size_bytes);
        if (actions.cached->kind == EvictionOutcome::Kind::Rejected && node.cs.capacity() > 0) {
            ++node.counters.rejected_inserts;
        }
    }
    return actions;
}

} // namespace felsim::ccn
