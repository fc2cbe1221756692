#include "felsim/sim/engine.hpp"

#include <string>

#include "felsim/error.hpp"

namespace felsim::sim {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::InterestIssue: return "interest-issue";
    case EventKind::PacketArrival: return "packet-arrival";
    case EventKind::PitExpiry: return "pit-expiry";
    case EventKind::LearningEpoch: return "learning-epoch";
    case EventKind::Handover: return "handover";
    case EventKind::MetricsFlush: return "metrics-flush";
    }
    return "unknown";
}

EventId Engine::schedule(SimTime fire_at, EventKind kind, Handler handler) {
    if (fire_at < clock_) {
        throw PastEvent("event '" + std::string(to_string(kind)) + "' at " + std::to_string(fire_at.ms()) +
                        "ms scheduled while clock is " + std::to_string(clock_.ms()) + "ms");
    }
    const EventId id = next_seq_++;
    queue_.push(Event{fire_at, id, kind, std::move(handler)});
    return id;
}

void Engine::fire_next() {
    // Copy out before pop: the handler may push into the queue.
    Event ev = queue_.top();
    queue_.pop();
    clock_ = ev.fire_at;
    ++processed_;
    if (ev.handler) ev.handler();
}

std::uint64_t Engine::run_until(SimTime t_end) {
    if (t_end < clock_) {
        throw PastEvent("run_until(" + std::to_string(t_end.ms()) + "ms) behind clock " +
                        std::to_string(clock_.ms()) + "ms");
    }
    std::uint64_t count = 0;
    while (!queue_.empty() && queue_.top().fire_at <= t_end) {
        fire_next();
        ++count;
    }
    clock_ = t_end;
    return count;
}

std::uint64_t Engine::run_all() {
    std::uint64_t count = 0;
    while (!queue_.empty()) {
        fire_next();
        ++count;
    }
    return count;
}

} // namespace felsim::sim
