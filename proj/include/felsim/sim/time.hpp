#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace felsim {

// Durations are plain integer milliseconds.
using Millis = std::int64_t;

// A point on the simulated time axis, in whole milliseconds since start.
class SimTime {
public:
    constexpr SimTime() = default;
    constexpr explicit SimTime(Millis ms) : ms_(ms) {}

    constexpr Millis ms() const noexcept { return ms_; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(Millis d) const noexcept { return SimTime{ms_ + d}; }
    constexpr Millis operator-(SimTime other) const noexcept { return ms_ - other.ms_; }

private:
    Millis ms_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ms() << "ms"; }

} // namespace felsim
