#include "felsim/ccn/pit.hpp"

#include <algorithm>

namespace felsim::ccn {

std::string_view to_string(TrafficClass t) { return t == TrafficClass::Demand ? "demand" : "prefetch"; }

PitEntry* Pit::find(const ContentName& name, TrafficClass traffic) {
    const auto it = entries_.find(Key{name, traffic});
    return it == entries_.end() ? nullptr : &it->second;
}

const PitEntry* Pit::find(const ContentName& name, TrafficClass traffic) const {
    const auto it = entries_.find(Key{name, traffic});
    return it == entries_.end() ? nullptr : &it->second;
}

PitEntry& Pit::create(const ContentName& name, TrafficClass traffic, Downstream first, SimTime now, Millis lifetime) {
    PitEntry entry{next_id_++, name, traffic, {first}, now, lifetime, now + lifetime};
    auto [it, inserted] = entries_.insert_or_assign(Key{name, traffic}, std::move(entry));
    return it->second;
}

void Pit::erase(const ContentName& name, TrafficClass traffic) { entries_.erase(Key{name, traffic}); }

std::size_t Pit::remove_face(NodeId face) {
    std::size_t removed = 0;
    for (auto it = entries_.begin(); it != entries_.end();) {
        auto& ds = it->second.downstreams;
        const auto before = ds.size();
        std::erase_if(ds, [&](const Downstream& d) { return d.face == face; });
        removed += before - ds.size();
        it = ds.empty() ? entries_.erase(it) : std::next(it);
    }
    return removed;
}

void Fib::add(const ContentName& prefix, NodeId next_hop) { routes_.insert_or_assign(prefix, next_hop); }

void Fib::remove(const ContentName& prefix) { routes_.erase(prefix); }

void Fib::retarget(NodeId next_hop) {
    for (auto& [prefix, hop] : routes_) hop = next_hop;
}

std::optional<NodeId> Fib::lookup(const ContentName& name) const {
    for (std::size_t len = name.size(); len > 0; --len) {
        const auto it = routes_.find(name.prefix(len));
        if (it != routes_.end()) return it->second;
    }
    return std::nullopt;
}

} // namespace felsim::ccn
