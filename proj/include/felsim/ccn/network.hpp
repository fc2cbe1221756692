#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "felsim/ccn/catalog.hpp"
#include "felsim/ccn/forwarder.hpp"
#include "felsim/sim/engine.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::ccn {

struct RequestOutcome {
    std::uint64_t request_id = 0;
    NodeId requester;
    ContentName name;
    SimTime issued_at;
    // Empty when the request expired in the PIT.
    std::optional<SimTime> satisfied_at;
    NodeId served_by;
    // Kind of the first hop the Interest took; empty for a hit in the requester's own store.
    std::optional<LinkKind> first_hop;

    bool satisfied() const noexcept { return satisfied_at.has_value(); }
    Millis latency() const { return *satisfied_at - issued_at; }
};

using CompletionHandler = std::function<void(const RequestOutcome&)>;

struct ExpressOptions {
    // Overrides the FIB for the first hop (a D2D peer, or a redirection tunnel).
    std::optional<NodeId> first_hop;
    // Time spent before the Interest leaves the device; counted in latency.
    Millis start_delay = 0;
};

struct NetworkOptions {
    // 0 selects 4 x the largest requester-to-cloud path latency.
    Millis pit_lifetime = 0;
    // Base stations steer demand toward pinned items held by their fog entity.
    bool fog_offload = false;
};

struct NetworkCounters {
    std::uint64_t issued = 0;
    std::uint64_t delivered = 0;
    std::uint64_t request_expiries = 0;
    std::uint64_t pit_entry_expiries = 0;
    std::uint64_t unsolicited_drops = 0;
    std::uint64_t detached_drops = 0;
    std::uint64_t prefetches = 0;
    std::uint64_t prefetch_expiries = 0;
    std::uint64_t pin_rejections = 0;
};

/// Hooks for tracing; every member is optional.
struct NetworkObserver {
    std::function<void(const Interest&)> on_issue;
    std::function<void(NodeId node, const Interest&, NodeId next_hop, SimTime now)> on_forward;
    std::function<void(NodeId node, const ContentName&, const EvictionOutcome&, SimTime now)> on_cache;
};

/// Runs CCN forwarding for every node of a topology on top of the event engine.
/// Packets traverse links with the link's latency; nodes add no processing delay.
class CcnNetwork {
public:
    CcnNetwork(const Topology& topology, const ContentCatalog& catalog, sim::Engine& engine,
               NetworkOptions options = {});

    CcnNetwork(const CcnNetwork&) = delete;
    CcnNetwork& operator=(const CcnNetwork&) = delete;

    /// Issues a user request from `requester`; the handler fires once, on
    /// delivery or on PIT expiry. Returns the request id.
    std::uint64_t express(NodeId requester, const ContentName& name, CompletionHandler on_done,
                          ExpressOptions options = {});

    /// Replaces the node's pinned set and prefetches missing items.
    /// Throws PinOverflow. Returns the names being prefetched.
    std::vector<ContentName> apply_pins(NodeId node, const std::set<ContentName>& names);

    /// Moves a requester's RAN attachment and its FIB to another access point.
    void attach(NodeId requester, NodeId access_point);
    NodeId attachment(NodeId requester) const;

    /// Point-to-point virtual link used by redirection.
    void add_tunnel(NodeId a, NodeId b, Millis latency);
    void remove_tunnel(NodeId a, NodeId b);

    /// Forgets PIT state at `node` that points at `face`.
    std::size_t abandon(NodeId node, NodeId face);

    /// Sends the requester's pending demand Interests again through its current FIB.
    std::size_t reexpress(NodeId requester);

    std::optional<Millis> hop_latency(NodeId from, NodeId to) const;

    const CcnNode& node(NodeId id) const { return nodes_.at(id.index()); }
    CcnNode& node(NodeId id) { return nodes_.at(id.index()); }
    const std::vector<CcnNode>& nodes() const noexcept { return nodes_; }
    const Topology& topology() const noexcept { return topology_; }
    const ContentCatalog& catalog() const noexcept { return catalog_; }
    sim::Engine& engine() noexcept { return engine_; }
    Millis pit_lifetime() const noexcept { return pit_lifetime_; }
    const NetworkCounters& counters() const noexcept { return counters_; }
    std::size_t in_flight() const noexcept { return pending_.size(); }

    void set_observer(NetworkObserver observer) { observer_ = std::move(observer); }

private:
    struct PendingRequest {
        NodeId requester;
        ContentName name;
        SimTime issued_at;
        CompletionHandler on_done;
        std::optional<LinkKind> first_hop;
    };

    void launch(std::uint64_t nonce, ExpressOptions options);
    void send_interest(NodeId from, NodeId to, Interest interest);
    void send_data(NodeId from, NodeId to, Data data);
    void receive_interest(NodeId at, NodeId from, const Interest& interest);
    void receive_data(NodeId at, const Data& data);
    void schedule_expiry(NodeId at, const PitEntry& entry);
    void expire(NodeId at, const ContentName& name, TrafficClass traffic, std::uint64_t entry_id, SimTime due);
    void finish(std::uint64_t nonce, std::optional<SimTime> satisfied_at, NodeId served_by);

    const Topology& topology_;
    const ContentCatalog& catalog_;
    sim::Engine& engine_;
    NetworkOptions options_;
    Millis pit_lifetime_ = 0;

    std::vector<CcnNode> nodes_;
    // Requester -> (current access point, RAN latency).
    std::unordered_map<NodeId, std::pair<NodeId, Millis>> attachment_;
    std::map<std::pair<NodeId, NodeId>, Millis> tunnels_;
    std::unordered_map<std::uint64_t, PendingRequest> pending_;

    std::uint64_t next_request_id_ = 0;
    std::uint64_t next_prefetch_nonce_ = std::uint64_t{1} << 63;
    NetworkCounters counters_;
    NetworkObserver observer_;
};

} // namespace felsim::ccn
