#include "felsim/ccn/network.hpp"

#include <algorithm>

#include "felsim/error.hpp"

namespace felsim::ccn {

namespace {

std::pair<NodeId, NodeId> ordered(NodeId a, NodeId b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

bool is_access(NodeKind k) { return k == NodeKind::AccessPoint || k == NodeKind::BaseStation; }

} // namespace

CcnNetwork::CcnNetwork(const Topology& topology, const ContentCatalog& catalog, sim::Engine& engine,
                       NetworkOptions options)
    : topology_(topology), catalog_(catalog), engine_(engine), options_(options) {
    const auto cloud = topology.cloud();
    if (!cloud) throw InvalidSpec("topology has no cloud origin");

    nodes_.reserve(topology.node_count());
    for (const auto& n : topology.nodes()) {
        CcnNode cn;
        cn.id = n.id;
        cn.kind = n.kind;
        cn.cs = ContentStore(n.kind == NodeKind::Cloud ? 0 : n.cs_capacity);
        if (n.kind == NodeKind::Cloud) cn.origin = &catalog_;
        nodes_.push_back(std::move(cn));
    }

    const auto prefixes = catalog.top_level_prefixes();
    Millis worst_cloud_path = 1;
    for (const auto& n : topology.nodes()) {
        if (n.kind == NodeKind::Cloud) continue;
        std::optional<NodeId> next;
        if (n.kind == NodeKind::Requester) {
            const auto aps = topology.attached_aps(n.id);
            if (aps.empty()) throw InvalidSpec("requester '" + n.label + "' has no access point");
            next = aps.front();
            attachment_[n.id] = {aps.front(), topology.link_between(n.id, aps.front(), kRanMask)->latency};
            worst_cloud_path = std::max(worst_cloud_path, topology.path_latency(n.id, *cloud, kInfrastructure));
        } else {
            const auto path = topology.shortest_path(n.id, *cloud, kInfrastructure);
            if (path.size() >= 2) next = path[1];
        }
        if (!next) continue;
        for (const auto& p : prefixes) nodes_[n.id.index()].fib.add(p, *next);
    }
    pit_lifetime_ = options_.pit_lifetime > 0 ? options_.pit_lifetime : 4 * worst_cloud_path;

    if (options_.fog_offload) {
        for (const NodeId bs : topology.nodes_of_kind(NodeKind::BaseStation)) {
            if (const auto fog = topology.fog_at(bs)) {
                nodes_[bs.index()].offload = *fog;
                nodes_[bs.index()].offload_cs = &nodes_[fog->index()].cs;
            }
        }
    }
}

std::optional<Millis> CcnNetwork::hop_latency(NodeId from, NodeId to) const {
    if (const auto it = tunnels_.find(ordered(from, to)); it != tunnels_.end()) return it->second;
    const auto check_attachment = [&](NodeId req, NodeId other) -> std::optional<std::optional<Millis>> {
        const auto it = attachment_.find(req);
        if (it == attachment_.end() || !is_access(topology_.node(other).kind)) return std::nullopt;
        if (it->second.first == other) return std::optional<Millis>{it->second.second};
        return std::optional<Millis>{};
    };
    if (auto r = check_attachment(from, to)) return *r;
    if (auto r = check_attachment(to, from)) return *r;
    if (const auto link = topology_.link_between(from, to)) return link->latency;
    return std::nullopt;
}

std::uint64_t CcnNetwork::express(NodeId requester, const ContentName& name, CompletionHandler on_done,
                                  ExpressOptions options) {
    if (topology_.node(requester).kind != NodeKind::Requester) {
        throw InvariantViolation("express from non-requester node " + topology_.node(requester).label);
    }
    const std::uint64_t id = next_request_id_++;
    pending_.emplace(id, PendingRequest{requester, name, engine_.now(), std::move(on_done), std::nullopt});
    ++counters_.issued;
    if (observer_.on_issue) observer_.on_issue(Interest{name, requester, id, engine_.now(), TrafficClass::Demand});

    if (options.start_delay > 0) {
        engine_.schedule_in(options.start_delay, sim::EventKind::InterestIssue,
                            [this, id, options] { launch(id, options); });
    } else {
        launch(id, options);
    }
    return id;
}

void CcnNetwork::launch(std::uint64_t nonce, ExpressOptions options) {
    auto& req = pending_.at(nonce);
    const Interest interest{req.name, req.requester, nonce, req.issued_at, TrafficClass::Demand};
    CcnNode& self = nodes_[req.requester.index()];
    const auto action = on_interest(self, interest, req.requester, engine_.now(), pit_lifetime_);
    if (const auto* reply = std::get_if<ReplyData>(&action)) {
        finish(nonce, engine_.now(), reply->data.producer);
        return;
    }
    if (std::holds_alternative<Aggregate>(action)) return;

    const NodeId next = options.first_hop.value_or(std::get<Forward>(action).next_hop);
    const auto link = topology_.link_between(req.requester, next, kD2dMask);
    req.first_hop = link ? LinkKind::D2D : LinkKind::RAN;
    schedule_expiry(req.requester, *self.pit.find(interest.name, interest.traffic));
    if (observer_.on_forward) observer_.on_forward(req.requester, interest, next, engine_.now());
    send_interest(req.requester, next, interest);
}

std::vector<ContentName> CcnNetwork::apply_pins(NodeId id, const std::set<ContentName>& names) {
    CcnNode& n = nodes_.at(id.index());
    auto missing = n.cs.set_pins(names);
    for (const auto& name : missing) {
        const Interest interest{name, id, next_prefetch_nonce_++, engine_.now(), TrafficClass::Prefetch};
        const auto action = on_interest(n, interest, id, engine_.now(), pit_lifetime_);
        if (const auto* fwd = std::get_if<Forward>(&action)) {
            ++counters_.prefetches;
            schedule_expiry(id, *n.pit.find(name, TrafficClass::Prefetch));
            if (observer_.on_forward) observer_.on_forward(id, interest, fwd->next_hop, engine_.now());
            send_interest(id, fwd->next_hop, interest);
        }
    }
    return missing;
}

void CcnNetwork::attach(NodeId requester, NodeId access_point) {
    auto it = attachment_.find(requester);
    if (it == attachment_.end()) throw InvalidHandover(topology_.node(requester).label + " is not a requester");
    if (!is_access(topology_.node(access_point).kind)) {
        throw InvalidHandover(topology_.node(access_point).label + " is not an access point");
    }
    it->second.first = access_point;
    nodes_[requester.index()].fib.retarget(access_point);
}

NodeId CcnNetwork::attachment(NodeId requester) const { return attachment_.at(requester).first; }

void CcnNetwork::add_tunnel(NodeId a, NodeId b, Millis latency) { tunnels_[ordered(a, b)] = latency; }

void CcnNetwork::remove_tunnel(NodeId a, NodeId b) { tunnels_.erase(ordered(a, b)); }

std::size_t CcnNetwork::abandon(NodeId at, NodeId face) { return nodes_.at(at.index()).pit.remove_face(face); }

std::size_t CcnNetwork::reexpress(NodeId requester) {
    CcnNode& self = nodes_.at(requester.index());
    std::size_t sent = 0;
    for (auto& [key, entry] : self.pit.entries()) {
        if (entry.traffic != TrafficClass::Demand) continue;
        const auto next = self.fib.lookup(entry.name);
        if (!next) continue;
        entry.expires_at = engine_.now() + pit_lifetime_;
        schedule_expiry(requester, entry);
        for (const auto& ds : entry.downstreams) {
            if (ds.face != requester) continue;
            const auto p = pending_.find(ds.nonce);
            if (p == pending_.end()) continue;
            p->second.first_hop = LinkKind::RAN;
            send_interest(requester, *next, Interest{entry.name, requester, ds.nonce, p->second.issued_at});
            ++sent;
        }
    }
    return sent;
}

void CcnNetwork::send_interest(NodeId from, NodeId to, Interest interest) {
    const auto latency = hop_latency(from, to);
    if (!latency) {
        ++counters_.detached_drops;
        return;
    }
    engine_.schedule_in(*latency, sim::EventKind::PacketArrival,
                        [this, from, to, interest = std::move(interest)] { receive_interest(to, from, interest); });
}

void CcnNetwork::send_data(NodeId from, NodeId to, Data data) {
    const auto latency = hop_latency(from, to);
    if (!latency) {
        ++counters_.detached_drops;
        return;
    }
    engine_.schedule_in(*latency, sim::EventKind::PacketArrival,
                        [this, to, data = std::move(data)] { receive_data(to, data); });
}

void CcnNetwork::receive_interest(NodeId at, NodeId from, const Interest& interest) {
    CcnNode& n = nodes_[at.index()];
    const auto action = on_interest(n, interest, from, engine_.now(), pit_lifetime_);
    if (const auto* reply = std::get_if<ReplyData>(&action)) {
        send_data(at, from, reply->data);
    } else if (const auto* fwd = std::get_if<Forward>(&action)) {
        schedule_expiry(at, *n.pit.find(interest.name, interest.traffic));
        if (observer_.on_forward) observer_.on_forward(at, interest, fwd->next_hop, engine_.now());
        send_interest(at, fwd->next_hop, interest);
    }
}

void CcnNetwork::receive_data(NodeId at, const Data& data) {
    CcnNode& n = nodes_[at.index()];
    const auto actions = on_data(n, data, engine_.now());
    if (actions.unsolicited) {
        ++counters_.unsolicited_drops;
        return;
    }
    if (actions.cached) {
        if (actions.cached->kind == EvictionOutcome::Kind::Rejected && n.cs.capacity() > 0) ++counters_.pin_rejections;
        if (observer_.on_cache) observer_.on_cache(at, data.name, *actions.cached, engine_.now());
    }
    for (const auto& ds : actions.deliveries) {
        if (ds.face == at) {
            if (data.traffic == TrafficClass::Demand) finish(ds.nonce, engine_.now(), data.producer);
        } else {
            send_data(at, ds.face, data);
        }
    }
}

void CcnNetwork::schedule_expiry(NodeId at, const PitEntry& entry) {
    engine_.schedule(entry.expires_at, sim::EventKind::PitExpiry,
                     [this, at, name = entry.name, traffic = entry.traffic, id = entry.id, due = entry.expires_at] {
                         expire(at, name, traffic, id, due);
                     });
}

void CcnNetwork::expire(NodeId at, const ContentName& name, TrafficClass traffic, std::uint64_t entry_id, SimTime due) {
    CcnNode& n = nodes_[at.index()];
    const PitEntry* entry = n.pit.find(name, traffic);
    if (!entry || entry->id != entry_id || entry->expires_at != due) return;
    ++counters_.pit_entry_expiries;
    const auto downstreams = entry->downstreams;
    n.pit.erase(name, traffic);
    for (const auto& ds : downstreams) {
        if (ds.face != at) continue;
        if (traffic == TrafficClass::Demand) {
            if (pending_.contains(ds.nonce)) {
                ++counters_.request_expiries;
                finish(ds.nonce, std::nullopt, at);
            }
        } else {
            ++counters_.prefetch_expiries;
        }
    }
}

void CcnNetwork::finish(std::uint64_t nonce, std::optional<SimTime> satisfied_at, NodeId served_by) {
    auto it = pending_.find(nonce);
    if (it == pending_.end()) return;
    PendingRequest req = std::move(it->second);
    pending_.erase(it);
    if (satisfied_at) ++counters_.delivered;
    RequestOutcome outcome{nonce, req.requester, req.name, req.issued_at, satisfied_at, served_by, req.first_hop};
    if (req.on_done) req.on_done(outcome);
}

} // namespace felsim::ccn
