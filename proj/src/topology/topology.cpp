#include "felsim/topology/topology.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "felsim/error.hpp"

namespace felsim {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Requester: return "Requester";
    case NodeKind::AccessPoint: return "AccessPoint";
    case NodeKind::BaseStation: return "BaseStation";
    case NodeKind::Gateway: return "Gateway";
    case NodeKind::Cloud: return "Cloud";
    case NodeKind::FogEntity: return "FogEntity";
    }
    return "Unknown";
}

std::string_view to_string(LinkKind kind) {
    switch (kind) {
    case LinkKind::Wired: return "Wired";
    case LinkKind::RAN: return "RAN";
    case LinkKind::D2D: return "D2D";
    }
    return "Unknown";
}

namespace {

std::uint8_t mask_of(LinkKind kind) {
    switch (kind) {
    case LinkKind::Wired: return kWiredMask;
    case LinkKind::RAN: return kRanMask;
    case LinkKind::D2D: return kD2dMask;
    }
    return 0;
}

// Height in the access hierarchy; the wired parent of a node is its
// lowest-indexed infrastructure neighbor one or more levels up.
int level(NodeKind kind) {
    switch (kind) {
    case NodeKind::Requester: return 0;
    case NodeKind::AccessPoint: return 1;
    case NodeKind::FogEntity: return 1;
    case NodeKind::BaseStation: return 2;
    case NodeKind::Gateway: return 3;
    case NodeKind::Cloud: return 4;
    }
    return 0;
}

} // namespace

NodeId Topology::add_node(std::string label, NodeKind kind, std::uint32_t idle_compute, std::size_t cs_capacity,
                          std::optional<std::uint32_t> community) {
    if (find(label)) throw InvalidSpec("duplicate node label '" + label + "'");
    const NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    if (kind == NodeKind::Cloud) cs_capacity = kUnboundedCapacity;
    nodes_.push_back(Node{id, std::move(label), kind, idle_compute, cs_capacity, community});
    adjacency_.emplace_back();
    return id;
}

void Topology::add_link(NodeId a, NodeId b, Millis latency, LinkKind kind) {
    if (a.index() >= nodes_.size() || b.index() >= nodes_.size()) throw InvalidSpec("link references unknown node");
    if (a == b) throw InvalidSpec("self-loop on '" + nodes_[a.index()].label + "'");
    if (latency <= 0) {
        throw InvalidSpec("link " + nodes_[a.index()].label + "-" + nodes_[b.index()].label +
                          " needs positive latency, got " + std::to_string(latency));
    }
    if (link_between(a, b, mask_of(kind))) {
        throw InvalidSpec("duplicate " + std::string(to_string(kind)) + " link " + nodes_[a.index()].label + "-" +
                          nodes_[b.index()].label);
    }
    const std::size_t idx = links_.size();
    links_.push_back(Link{a, b, latency, kind});
    adjacency_[a.index()].emplace_back(b, idx);
    adjacency_[b.index()].emplace_back(a, idx);
}

const Node& Topology::node(NodeId id) const {
    if (id.index() >= nodes_.size()) throw InvalidSpec("unknown node index " + std::to_string(id.index()));
    return nodes_[id.index()];
}

std::optional<NodeId> Topology::find(std::string_view label) const {
    for (const auto& n : nodes_) {
        if (n.label == label) return n.id;
    }
    return std::nullopt;
}

NodeId Topology::require(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw InvalidSpec("unknown node '" + std::string(label) + "'");
}

std::vector<NodeId> Topology::nodes_of_kind(NodeKind kind) const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n.kind == kind) out.push_back(n.id);
    }
    return out;
}

const std::vector<std::pair<NodeId, std::size_t>>& Topology::adjacency(NodeId id) const {
    return adjacency_.at(id.index());
}

std::optional<Link> Topology::link_between(NodeId a, NodeId b, std::uint8_t mask) const {
    if (a.index() >= adjacency_.size()) return std::nullopt;
    for (const auto& [nb, idx] : adjacency_[a.index()]) {
        if (nb == b && (mask_of(links_[idx].kind) & mask)) return links_[idx];
    }
    return std::nullopt;
}

std::vector<NodeId> Topology::shortest_path(NodeId src, NodeId dst, std::uint8_t mask) const {
    constexpr Millis kInf = std::numeric_limits<Millis>::max();
    const std::size_t n = nodes_.size();
    if (src.index() >= n || dst.index() >= n) return {};
    std::vector<Millis> dist(n, kInf);
    std::vector<std::uint32_t> prev(n, std::numeric_limits<std::uint32_t>::max());
    using Item = std::pair<Millis, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
    dist[src.index()] = 0;
    frontier.emplace(0, src.index());
    while (!frontier.empty()) {
        auto [d, u] = frontier.top();
        frontier.pop();
        if (d > dist[u]) continue;
        if (u == dst.index()) break;
        for (const auto& [nb, idx] : adjacency_[u]) {
            const Link& l = links_[idx];
            if (!(mask_of(l.kind) & mask)) continue;
            const Millis nd = d + l.latency;
            // Ties resolve toward the lower predecessor index so paths are reproducible.
            if (nd < dist[nb.index()] || (nd == dist[nb.index()] && u < prev[nb.index()])) {
                dist[nb.index()] = nd;
                prev[nb.index()] = u;
                frontier.emplace(nd, nb.index());
            }
        }
    }
    if (dist[dst.index()] == kInf) return {};
    std::vector<NodeId> path;
    for (std::uint32_t v = dst.index(); v != src.index(); v = prev[v]) path.emplace_back(v);
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    return path;
}

Millis Topology::path_latency(NodeId src, NodeId dst, std::uint8_t mask) const {
    if (src == dst) return 0;
    const auto path = shortest_path(src, dst, mask);
    if (path.empty()) {
        throw Unreachable("no path from '" + node(src).label + "' to '" + node(dst).label + "'");
    }
    Millis total = 0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        Millis best = std::numeric_limits<Millis>::max();
        for (const auto& [nb, idx] : adjacency_[path[i - 1].index()]) {
            if (nb == path[i] && (mask_of(links_[idx].kind) & mask)) best = std::min(best, links_[idx].latency);
        }
        total += best;
    }
    return total;
}

void Topology::validate() const {
    if (nodes_.empty()) throw InvalidSpec("topology has no nodes");
    for (const auto& n : nodes_) {
        if (n.kind == NodeKind::Cloud && n.cs_capacity != kUnboundedCapacity) {
            throw InvalidSpec("cloud '" + n.label + "' must hold every item");
        }
    }
    for (const auto& l : links_) {
        if (l.a == l.b) throw InvalidSpec("self-loop");
        if (l.latency <= 0) throw InvalidSpec("non-positive link latency");
    }
    // Connectivity over Wired + RAN.
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& [nb, idx] : adjacency_[u]) {
            if (!(mask_of(links_[idx].kind) & kInfrastructure) || seen[nb.index()]) continue;
            seen[nb.index()] = true;
            stack.push_back(nb.index());
        }
    }
    for (const auto& n : nodes_) {
        if (!seen[n.id.index()]) throw InvalidSpec("node '" + n.label + "' is disconnected from the infrastructure");
        if (n.kind != NodeKind::Requester) continue;
        bool has_ran = false;
        for (const auto& [nb, idx] : adjacency_[n.id.index()]) {
            const auto k = nodes_[nb.index()].kind;
            if (links_[idx].kind == LinkKind::RAN && (k == NodeKind::AccessPoint || k == NodeKind::BaseStation)) {
                has_ran = true;
            }
        }
        if (!has_ran) throw InvalidSpec("requester '" + n.label + "' has no RAN attachment");
    }
}

std::optional<NodeId> Topology::cloud() const {
    for (const auto& n : nodes_) {
        if (n.kind == NodeKind::Cloud) return n.id;
    }
    return std::nullopt;
}

std::vector<NodeId> Topology::attached_aps(NodeId requester) const {
    std::vector<NodeId> out;
    for (const auto& [nb, idx] : adjacency(requester)) {
        const auto k = nodes_[nb.index()].kind;
        if (links_[idx].kind == LinkKind::RAN && (k == NodeKind::AccessPoint || k == NodeKind::BaseStation)) {
            out.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<NodeId> Topology::upstream_of(NodeId id) const {
    const int own = level(node(id).kind);
    std::optional<NodeId> best;
    int best_level = std::numeric_limits<int>::max();
    for (const auto& [nb, idx] : adjacency(id)) {
        if (links_[idx].kind == LinkKind::D2D) continue;
        const int l = level(nodes_[nb.index()].kind);
        if (l <= own) continue;
        if (l < best_level || (l == best_level && nb < *best)) {
            best = nb;
            best_level = l;
        }
    }
    return best;
}

std::optional<NodeId> Topology::base_station_of(NodeId id) const {
    std::optional<NodeId> cur = id;
    while (cur) {
        const auto kind = node(*cur).kind;
        if (kind == NodeKind::BaseStation) return cur;
        if (kind == NodeKind::Gateway || kind == NodeKind::Cloud) return std::nullopt;
        cur = upstream_of(*cur);
    }
    return std::nullopt;
}

std::optional<NodeId> Topology::gateway_of(NodeId id) const {
    std::optional<NodeId> cur = id;
    while (cur) {
        const auto kind = node(*cur).kind;
        if (kind == NodeKind::Gateway) return cur;
        if (kind == NodeKind::Cloud) return std::nullopt;
        cur = upstream_of(*cur);
    }
    return std::nullopt;
}

std::optional<NodeId> Topology::fog_at(NodeId base_station) const {
    std::optional<NodeId> best;
    for (const auto& [nb, idx] : adjacency(base_station)) {
        if (nodes_[nb.index()].kind == NodeKind::FogEntity && (!best || nb < *best)) best = nb;
    }
    return best;
}

std::vector<NodeId> Topology::d2d_peers(NodeId requester) const {
    std::vector<NodeId> out;
    for (const auto& [nb, idx] : adjacency(requester)) {
        if (links_[idx].kind == LinkKind::D2D && nodes_[nb.index()].kind == NodeKind::Requester) out.push_back(nb);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Topology build_community(const CommunitySpec& spec) {
    if (spec.communities < 1) throw InvalidSpec("community count must be at least 1");
    if (spec.requesters_per_community < 1) throw InvalidSpec("requesters per community must be at least 1");
    if (spec.aps_per_community < 1) throw InvalidSpec("access points per community must be at least 1");
    const std::pair<const char*, Millis> latencies[] = {
        {"requester_ap_latency", spec.requester_ap_latency},   {"ap_bs_latency", spec.ap_bs_latency},
        {"bs_gateway_latency", spec.bs_gateway_latency},       {"gateway_cloud_latency", spec.gateway_cloud_latency},
        {"fog_access_latency", spec.fog_access_latency},       {"d2d_latency", spec.d2d_latency},
    };
    for (const auto& [name, value] : latencies) {
        if (value <= 0) throw InvalidSpec(std::string(name) + " must be positive, got " + std::to_string(value));
    }

    Topology topo;
    const NodeId cloud = topo.add_node("cloud", NodeKind::Cloud, 0, kUnboundedCapacity);
    for (std::uint32_t c = 0; c < spec.communities; ++c) {
        const std::string cs = std::to_string(c);
        std::vector<NodeId> requesters;
        for (std::uint32_t i = 0; i < spec.requesters_per_community; ++i) {
            requesters.push_back(topo.add_node("req-" + cs + "-" + std::to_string(i), NodeKind::Requester,
                                               spec.idle_compute_requester, spec.cs_capacity_requester, c));
        }
        std::vector<NodeId> aps;
        for (std::uint32_t j = 0; j < spec.aps_per_community; ++j) {
            aps.push_back(topo.add_node("ap-" + cs + "-" + std::to_string(j), NodeKind::AccessPoint,
                                        spec.idle_compute_ap, spec.cs_capacity_ap, c));
        }
        const NodeId bs = topo.add_node("bs-" + cs, NodeKind::BaseStation, spec.idle_compute_bs, spec.cs_capacity_bs, c);
        const NodeId fog = topo.add_node("fog-" + cs, NodeKind::FogEntity, spec.idle_compute_fog, spec.cs_capacity_fog, c);
        const NodeId gw = topo.add_node("gw-" + cs, NodeKind::Gateway, 0, spec.cs_capacity_gateway, c);

        for (std::uint32_t i = 0; i < requesters.size(); ++i) {
            topo.add_link(requesters[i], aps[i % aps.size()], spec.requester_ap_latency, LinkKind::RAN);
        }
        for (const auto ap : aps) topo.add_link(ap, bs, spec.ap_bs_latency, LinkKind::Wired);
        topo.add_link(bs, fog, spec.fog_access_latency, LinkKind::Wired);
        topo.add_link(bs, gw, spec.bs_gateway_latency, LinkKind::Wired);
        topo.add_link(gw, cloud, spec.gateway_cloud_latency, LinkKind::Wired);

        if (spec.d2d) {
            for (std::uint32_t i = 0; i < requesters.size(); ++i) {
                for (std::uint32_t j = i + 1; j < requesters.size(); ++j) {
                    if (i % aps.size() == j % aps.size()) {
                        topo.add_link(requesters[i], requesters[j], spec.d2d_latency, LinkKind::D2D);
                    }
                }
            }
        }
    }
    topo.validate();
    return topo;
}

std::vector<FogDomain> form_fog_domains(const Topology& topology, std::uint32_t ticket_threshold) {
    std::vector<FogDomain> domains;
    for (const NodeId bs : topology.nodes_of_kind(NodeKind::BaseStation)) {
        FogDomain domain;
        domain.domain_id = "domain-" + topology.node(bs).label;
        domain.anchor = bs;
        std::vector<NodeId> candidates{bs};
        for (const auto& [nb, idx] : topology.adjacency(bs)) {
            const auto kind = topology.node(nb).kind;
            if (kind != NodeKind::AccessPoint && kind != NodeKind::FogEntity) continue;
            candidates.push_back(nb);
            if (kind != NodeKind::AccessPoint) continue;
            for (const auto& [dn, didx] : topology.adjacency(nb)) {
                if (topology.node(dn).kind == NodeKind::Requester && topology.upstream_of(dn) == nb) {
                    candidates.push_back(dn);
                }
            }
        }
        for (const NodeId c : candidates) {
            const auto& n = topology.node(c);
            if (n.idle_compute >= ticket_threshold && domain.members.insert(c).second) {
                domain.capacity += n.idle_compute;
            }
        }
        domains.push_back(std::move(domain));
    }
    return domains;
}

} // namespace felsim
