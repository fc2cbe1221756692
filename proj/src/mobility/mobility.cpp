#include "felsim/mobility/mobility.hpp"

#include <algorithm>
#include <limits>

#include "felsim/error.hpp"

namespace felsim::mobility {

std::string_view to_string(HandoverScheme s) {
    return s == HandoverScheme::BaselineRedirect ? "BaselineRedirect" : "FelUpstreamCache";
}

HandoverScheme parse_scheme(std::string_view text) {
    if (text == "baseline" || text == "BaselineRedirect") return HandoverScheme::BaselineRedirect;
    if (text == "fel" || text == "FelUpstreamCache") return HandoverScheme::FelUpstreamCache;
    throw InvalidSpec("unknown handover scheme '" + std::string(text) + "'");
}

std::string_view to_string(LinkArm arm) { return arm == LinkArm::RAN ? "RAN" : "D2D"; }

MobilityManager::MobilityManager(ccn::CcnNetwork& network, std::size_t recent_window)
    : network_(network), recent_window_(recent_window) {
    const auto& topo = network.topology();
    for (const NodeId id : topo.nodes_of_kind(NodeKind::Requester)) {
        const NodeId ap = network.attachment(id);
        requesters_.emplace(id, MobileRequester{id, ap, ap, topo.d2d_peers(id)});
    }
}

const MobileRequester& MobilityManager::requester(NodeId id) const {
    const auto it = requesters_.find(id);
    if (it == requesters_.end()) throw InvalidHandover("node " + std::to_string(id.index()) + " is not a requester");
    return it->second;
}

std::vector<NodeId> MobilityManager::requesters() const {
    std::vector<NodeId> out;
    for (const auto& [id, r] : requesters_) out.push_back(id);
    return out;
}

void MobilityManager::note_request(NodeId requester, const ccn::ContentName& name) {
    auto& q = recent_[requester];
    if (const auto it = std::find(q.begin(), q.end(), name); it != q.end()) q.erase(it);
    q.push_front(name);
    while (q.size() > recent_window_) q.pop_back();
}

std::vector<ccn::ContentName> MobilityManager::recent(NodeId requester) const {
    const auto it = recent_.find(requester);
    if (it == recent_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

Millis MobilityManager::redirect_latency(NodeId requester, NodeId from_ap, NodeId to_ap) const {
    const auto& topo = network_.topology();
    const auto& home = requesters_.at(requester);
    const auto ran = topo.link_between(requester, home.home_ap, kRanMask);
    const Millis access = ran ? ran->latency : 1;
    const NodeId pivot = topo.gateway_of(from_ap).value_or(topo.base_station_of(from_ap).value_or(from_ap));
    return access + topo.path_latency(to_ap, pivot, kWiredMask) + topo.path_latency(pivot, from_ap, kWiredMask);
}

HandoverResult MobilityManager::handover(NodeId requester, NodeId to_ap, HandoverScheme scheme,
                                         const std::function<void()>& on_fel_epoch) {
    auto it = requesters_.find(requester);
    if (it == requesters_.end()) throw InvalidHandover("node " + std::to_string(requester.index()) + " is not a requester");
    MobileRequester& mr = it->second;
    const auto& topo = network_.topology();
    const NodeId from_ap = mr.current_ap;
    if (to_ap == from_ap) throw InvalidHandover(topo.node(requester).label + " is already attached to " + topo.node(to_ap).label);
    if (topo.node(to_ap).kind != NodeKind::AccessPoint && topo.node(to_ap).kind != NodeKind::BaseStation) {
        throw InvalidHandover(topo.node(to_ap).label + " is not an access point");
    }
    const auto bs_from = topo.base_station_of(from_ap);
    const auto bs_to = topo.base_station_of(to_ap);
    const auto gw_from = topo.gateway_of(from_ap);
    const auto gw_to = topo.gateway_of(to_ap);
    const bool shared_bs = bs_from && bs_from == bs_to;
    if (!shared_bs && !(gw_from && gw_from == gw_to)) {
        throw InvalidHandover(topo.node(from_ap).label + " and " + topo.node(to_ap).label + " share no upstream node");
    }

    HandoverResult result;
    result.event = HandoverEvent{requester, from_ap, to_ap, network_.engine().now(), scheme};

    // In-flight names first, then the recent window.
    std::vector<ccn::ContentName> names;
    for (const auto& [key, entry] : network_.node(requester).pit.entries()) {
        if (key.second != ccn::TrafficClass::Demand) continue;
        if (std::any_of(entry.downstreams.begin(), entry.downstreams.end(),
                        [&](const ccn::Downstream& d) { return d.face == requester; })) {
            names.push_back(entry.name);
        }
    }
    for (const auto& n : recent(requester)) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    }

    if (const auto r = redirects_.find(requester); r != redirects_.end()) {
        network_.remove_tunnel(requester, r->second.old_ap);
        redirects_.erase(r);
    }
    result.abandoned = network_.abandon(from_ap, requester);
    network_.attach(requester, to_ap);
    mr.current_ap = to_ap;

    if (scheme == HandoverScheme::BaselineRedirect) {
        network_.add_tunnel(requester, from_ap, redirect_latency(requester, from_ap, to_ap));
        redirects_[requester] = Redirect{from_ap, {names.begin(), names.end()}};
        result.redirected = names;
    } else {
        result.reexpressed = network_.reexpress(requester);
        const NodeId bs = shared_bs ? *bs_from : bs_to.value_or(to_ap);
        const std::size_t capacity = network_.node(bs).cs.capacity();
        std::vector<ccn::ContentName> pins;
        for (const auto& n : names) {
            if (pins.size() < capacity) pins.push_back(n);
        }
        result.pinned = pins;
        for (const auto& n : network_.node(bs).cs.pin_targets()) {
            if (pins.size() >= capacity) break;
            if (std::find(pins.begin(), pins.end(), n) == pins.end()) pins.push_back(n);
        }
        network_.apply_pins(bs, {pins.begin(), pins.end()});
        result.pinned_at = bs;
    }

    if (on_fel_epoch) {
        on_fel_epoch();
        result.epoch_triggered = true;
    }
    return result;
}

std::optional<NodeId> MobilityManager::take_redirect(NodeId requester, const ccn::ContentName& name) {
    const auto it = redirects_.find(requester);
    if (it == redirects_.end() || !it->second.names.erase(name)) return std::nullopt;
    return it->second.old_ap;
}

LinkSelector::LinkSelector(NodeId requester, double epsilon, bool ran_available, bool d2d_available)
    : requester_(requester), epsilon_(epsilon), available_{ran_available, d2d_available} {
    if (epsilon < 0.0 || epsilon > 1.0) throw InvalidSpec("link epsilon must lie in [0, 1]");
    if (!ran_available && !d2d_available) throw InvalidSpec("requester has no link to select");
}

double LinkSelector::mean(LinkArm arm) const {
    const auto i = index(arm);
    return pulls_[i] == 0 ? 0.0 : static_cast<double>(sums_[i]) / static_cast<double>(pulls_[i]);
}

LinkArm LinkSelector::select(sim::RandomStream& stream) const {
    if (!available_[1]) return LinkArm::RAN;
    if (!available_[0]) return LinkArm::D2D;
    if (pulls_[0] == 0) return LinkArm::RAN;
    if (pulls_[1] == 0) return LinkArm::D2D;
    if (stream.next_uniform() < epsilon_) return stream.next_below(2) == 0 ? LinkArm::RAN : LinkArm::D2D;
    return mean(LinkArm::D2D) < mean(LinkArm::RAN) ? LinkArm::D2D : LinkArm::RAN;
}

void LinkSelector::record(LinkArm arm, Millis latency) {
    sums_[index(arm)] += latency;
    ++pulls_[index(arm)];
}

std::optional<NodeId> d2d_availability(const ccn::CcnNetwork& network, const std::vector<NodeId>& peers,
                                       const ccn::ContentName& name) {
    std::vector<NodeId> sorted = peers;
    std::sort(sorted.begin(), sorted.end());
    for (const NodeId p : sorted) {
        if (network.node(p).cs.contains(name)) return p;
    }
    return std::nullopt;
}

Millis d2d_probe_latency(const Topology& topology, NodeId requester) {
    Millis best = std::numeric_limits<Millis>::max();
    for (const auto& [nb, idx] : topology.adjacency(requester)) {
        const auto& l = topology.links()[idx];
        if (l.kind == LinkKind::D2D) best = std::min(best, l.latency);
    }
    return best == std::numeric_limits<Millis>::max() ? 0 : 2 * best;
}

} // namespace felsim::mobility
