#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "felsim/ccn/name.hpp"
#include "felsim/ccn/packet.hpp"

namespace felsim::ccn {

struct Downstream {
    // Equal to the owning node's id for locally originated Interests.
    NodeId face;
    std::uint64_t nonce = 0;
    bool operator==(const Downstream&) const = default;
};

struct PitEntry {
    std::uint64_t id = 0;
    ContentName name;
    TrafficClass traffic = TrafficClass::Demand;
    std::vector<Downstream> downstreams;
    SimTime created_at;
    Millis lifetime = 0;
    SimTime expires_at;
};

class Pit {
public:
    using Key = std::pair<ContentName, TrafficClass>;

    PitEntry* find(const ContentName& name, TrafficClass traffic);
    const PitEntry* find(const ContentName& name, TrafficClass traffic) const;
    PitEntry& create(const ContentName& name, TrafficClass traffic, Downstream first, SimTime now, Millis lifetime);
    void erase(const ContentName& name, TrafficClass traffic);

    /// Drops every downstream pointing at face; entries left empty are removed.
    /// Returns the number of downstreams removed.
    std::size_t remove_face(NodeId face);

    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<Key, PitEntry>& entries() const noexcept { return entries_; }
    std::map<Key, PitEntry>& entries() noexcept { return entries_; }

private:
    std::map<Key, PitEntry> entries_;
    std::uint64_t next_id_ = 0;
};

/// Name-prefix routing table with longest-prefix match.
class Fib {
public:
    void add(const ContentName& prefix, NodeId next_hop);
    void remove(const ContentName& prefix);
    /// Points every existing entry at a new next hop (used on re-attachment).
    void retarget(NodeId next_hop);
    std::optional<NodeId> lookup(const ContentName& name) const;
    std::size_t size() const noexcept { return routes_.size(); }

private:
    std::map<ContentName, NodeId> routes_;
};

} // namespace felsim::ccn
