#include "felsim/ccn/content_store.hpp"

#include "felsim/error.hpp"

namespace felsim::ccn {

std::optional<SimTime> ContentStore::last_access(const ContentName& name) const {
    const auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second.last_access;
}

std::uint64_t ContentStore::size_of(const ContentName& name) const {
    const auto it = entries_.find(name);
    return it == entries_.end() ? 0 : it->second.size_bytes;
}

void ContentStore::touch(const ContentName& name, SimTime now) {
    auto it = entries_.find(name);
    if (it == entries_.end()) return;
    lru_.splice(lru_.begin(), lru_, it->second.pos);
    it->second.last_access = now;
}

EvictionOutcome ContentStore::insert(const ContentName& name, SimTime now, std::uint64_t size_bytes) {
    if (contains(name)) {
        touch(name, now);
        return {EvictionOutcome::Kind::Refreshed, std::nullopt};
    }
    if (capacity_ == 0) return {EvictionOutcome::Kind::Rejected, std::nullopt};

    EvictionOutcome outcome{EvictionOutcome::Kind::Inserted, std::nullopt};
    if (lru_.size() >= capacity_) {
        auto victim = lru_.end();
        for (auto it = lru_.rbegin(); it != lru_.rend(); ++it) {
            if (!pin_targets_.contains(*it)) {
                victim = std::next(it).base();
                break;
            }
        }
        if (victim == lru_.end()) return {EvictionOutcome::Kind::Rejected, std::nullopt};
        outcome = {EvictionOutcome::Kind::Evicted, *victim};
        entries_.erase(*victim);
        lru_.erase(victim);
    }
    lru_.push_front(name);
    entries_.emplace(name, Entry{lru_.begin(), now, size_bytes});
    return outcome;
}

std::vector<ContentName> ContentStore::set_pins(const std::set<ContentName>& names) {
    if (names.size() > capacity_) {
        throw PinOverflow("pin set of " + std::to_string(names.size()) + " exceeds store capacity " +
                          std::to_string(capacity_));
    }
    pin_targets_ = names;
    std::vector<ContentName> missing;
    for (const auto& n : names) {
        if (!contains(n)) missing.push_back(n);
    }
    return missing;
}

std::set<ContentName> ContentStore::pinned() const {
    std::set<ContentName> out;
    for (const auto& n : pin_targets_) {
        if (contains(n)) out.insert(n);
    }
    return out;
}

std::vector<ContentName> ContentStore::entries() const { return {lru_.begin(), lru_.end()}; }

} // namespace felsim::ccn
