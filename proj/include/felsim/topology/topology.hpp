#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "felsim/sim/time.hpp"

namespace felsim {

class NodeId {
public:
    constexpr NodeId() = default;
    constexpr explicit NodeId(std::uint32_t index) : index_(index) {}
    constexpr std::uint32_t index() const noexcept { return index_; }
    constexpr auto operator<=>(const NodeId&) const = default;

private:
    std::uint32_t index_ = 0;
};

enum class NodeKind : std::uint8_t { Requester, AccessPoint, BaseStation, Gateway, Cloud, FogEntity };
enum class LinkKind : std::uint8_t { Wired, RAN, D2D };

std::string_view to_string(NodeKind kind);
std::string_view to_string(LinkKind kind);

// Capacity stand-in for the origin: it holds every catalog item.
inline constexpr std::size_t kUnboundedCapacity = static_cast<std::size_t>(-1);

struct Node {
    NodeId id;
    std::string label;
    NodeKind kind = NodeKind::Requester;
    std::uint32_t idle_compute = 0;
    std::size_t cs_capacity = 0;
    // Community (cell) index; the Cloud has none.
    std::optional<std::uint32_t> community;
};

struct Link {
    NodeId a;
    NodeId b;
    Millis latency = 1;
    LinkKind kind = LinkKind::Wired;
};

struct FogDomain {
    std::string domain_id;
    NodeId anchor;
    std::set<NodeId> members;
    std::uint64_t capacity = 0;
};

// Per-kind bit mask used to restrict path searches.
enum LinkMask : std::uint8_t {
    kWiredMask = 1,
    kRanMask = 2,
    kD2dMask = 4,
    kAllLinks = kWiredMask | kRanMask | kD2dMask,
    kInfrastructure = kWiredMask | kRanMask,
};

/// Immutable network graph. Built by the builders below or by hand through
/// add_node/add_link followed by validate().
class Topology {
public:
    NodeId add_node(std::string label, NodeKind kind, std::uint32_t idle_compute, std::size_t cs_capacity,
                    std::optional<std::uint32_t> community = std::nullopt);
    void add_link(NodeId a, NodeId b, Millis latency, LinkKind kind);

    /// Checks the graph invariants; throws InvalidSpec describing the first violation.
    void validate() const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Link>& links() const noexcept { return links_; }
    const Node& node(NodeId id) const;
    std::optional<NodeId> find(std::string_view label) const;
    NodeId require(std::string_view label) const;

    std::vector<NodeId> nodes_of_kind(NodeKind kind) const;

    // Links touching a node, as (neighbor, link index).
    const std::vector<std::pair<NodeId, std::size_t>>& adjacency(NodeId id) const;
    std::optional<Link> link_between(NodeId a, NodeId b, std::uint8_t mask = kAllLinks) const;

    /// Shortest latency between two nodes; throws Unreachable.
    Millis path_latency(NodeId src, NodeId dst, std::uint8_t mask = kAllLinks) const;
    /// Node sequence of one shortest path, src first; empty if unreachable.
    std::vector<NodeId> shortest_path(NodeId src, NodeId dst, std::uint8_t mask = kAllLinks) const;

    // Structural helpers for the 5G layout.
    std::optional<NodeId> cloud() const;
    /// Access points reachable from a requester over RAN.
    std::vector<NodeId> attached_aps(NodeId requester) const;
    /// Wired parent toward the cloud (AP -> BS, BS -> Gateway, Fog -> BS, Gateway -> Cloud).
    std::optional<NodeId> upstream_of(NodeId id) const;
    std::optional<NodeId> base_station_of(NodeId id) const;
    std::optional<NodeId> gateway_of(NodeId id) const;
    std::optional<NodeId> fog_at(NodeId base_station) const;
    std::vector<NodeId> d2d_peers(NodeId requester) const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<std::pair<NodeId, std::size_t>>> adjacency_;
};

/// Shape of a community-based 5G network: every community is a chain
/// Requester - AP - BS - Gateway - Cloud with a fog entity hanging off the BS.
struct CommunitySpec {
    std::uint32_t communities = 5;
    std::uint32_t requesters_per_community = 2;
    std::uint32_t aps_per_community = 1;

    Millis requester_ap_latency = 2;
    Millis ap_bs_latency = 5;
    Millis bs_gateway_latency = 10;
    Millis gateway_cloud_latency = 20;
    Millis fog_access_latency = 1;

    // D2D mesh among requesters sharing a home AP.
    bool d2d = false;
    Millis d2d_latency = 3;

    std::uint32_t idle_compute_requester = 0;
    std::uint32_t idle_compute_ap = 2;
    std::uint32_t idle_compute_bs = 8;
    std::uint32_t idle_compute_fog = 16;

    std::size_t cs_capacity_requester = 0;
    std::size_t cs_capacity_ap = 0;
    std::size_t cs_capacity_bs = 0;
    std::size_t cs_capacity_gateway = 0;
    std::size_t cs_capacity_fog = 10;
};

/// Node labels follow "req-<c>-<i>", "ap-<c>-<j>", "bs-<c>", "fog-<c>", "gw-<c>", "cloud".
Topology build_community(const CommunitySpec& spec);

/// One domain per base station. Candidates are the BS itself and the nodes
/// it serves (its APs, co-located fog entity, and requesters homed on those
/// APs); only candidates with idle_compute >= ticket_threshold join.
std::vector<FogDomain> form_fog_domains(const Topology& topology, std::uint32_t ticket_threshold);

} // namespace felsim

template <>
struct std::hash<felsim::NodeId> {
    std::size_t operator()(felsim::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.index()); }
};
