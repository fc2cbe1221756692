#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "felsim/ccn/name.hpp"
#include "felsim/sim/time.hpp"

namespace felsim::ccn {

struct EvictionOutcome {
    enum class Kind : std::uint8_t { Inserted, Refreshed, Evicted, Rejected };
    Kind kind = Kind::Inserted;
    std::optional<ContentName> evicted;
};

/// Bounded item cache with LRU replacement and strategy-controlled pins.
///
/// The strategy hands over a pin set; a pin target that is present is pinned
/// and never evicted. Targets not yet present become pinned once inserted.
class ContentStore {
public:
    explicit ContentStore(std::size_t capacity = 0) : capacity_(capacity) {}

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return lru_.size(); }

    bool contains(const ContentName& name) const { return entries_.contains(name); }
    bool is_pinned(const ContentName& name) const { return pin_targets_.contains(name) && contains(name); }
    std::optional<SimTime> last_access(const ContentName& name) const;
    std::uint64_t size_of(const ContentName& name) const;

    /// Marks a hit: refreshes recency.
    void touch(const ContentName& name, SimTime now);

    EvictionOutcome insert(const ContentName& name, SimTime now, std::uint64_t size_bytes = 1);

    /// Replaces the pin targets and returns the targets that are not cached yet.
    /// Throws PinOverflow when the set exceeds capacity.
    std::vector<ContentName> set_pins(const std::set<ContentName>& names);
    const std::set<ContentName>& pin_targets() const noexcept { return pin_targets_; }
    std::set<ContentName> pinned() const;

    /// Entries from most to least recently used.
    std::vector<ContentName> entries() const;

private:
    struct Entry {
        std::list<ContentName>::iterator pos;
        SimTime last_access;
        std::uint64_t size_bytes;
    };

    std::size_t capacity_;
    // Front = most recent.
    std::list<ContentName> lru_;
    std::unordered_map<ContentName, Entry> entries_;
    std::set<ContentName> pin_targets_;
};

} // namespace felsim::ccn
