#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <vector>

#include "felsim/sim/time.hpp"

namespace felsim::sim {

enum class EventKind : std::uint8_t {
    InterestIssue,
    PacketArrival,
    PitExpiry,
    LearningEpoch,
    Handover,
    MetricsFlush,
};

std::string_view to_string(EventKind kind);

using EventId = std::uint64_t;
using Handler = std::function<void()>;

struct Event {
    SimTime fire_at;
    EventId seq = 0;
    EventKind kind = EventKind::PacketArrival;
    Handler handler;
};

/// Single-threaded discrete-event engine.
///
/// Events fire in (fire_at, seq) order, where seq is the insertion counter,
/// so events sharing a timestamp run first-in first-out. Handlers may schedule
/// further events at or after the current clock.
class Engine {
public:
    SimTime now() const noexcept { return clock_; }
    std::size_t pending() const noexcept { return queue_.size(); }
    std::uint64_t processed() const noexcept { return processed_; }

    /// Throws PastEvent if fire_at lies before the current clock.
    EventId schedule(SimTime fire_at, EventKind kind, Handler handler);
    EventId schedule_in(Millis delay, EventKind kind, Handler handler) {
        return schedule(clock_ + delay, kind, std::move(handler));
    }

    /// Processes every event with fire_at <= t_end and leaves the clock at t_end.
    std::uint64_t run_until(SimTime t_end);

    /// Drains the queue completely; the clock stays at the last fired event.
    std::uint64_t run_all();

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    void fire_next();

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    SimTime clock_{0};
    EventId next_seq_ = 0;
    std::uint64_t processed_ = 0;
};

} // namespace felsim::sim
