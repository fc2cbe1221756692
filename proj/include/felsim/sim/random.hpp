#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace felsim::sim {

// Counter-based stream: output i is splitmix64(key + i * golden). The key is
// derived from (master seed, label), so every label gets its own substream and
// draws never depend on which other streams exist.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::string_view label);

    const std::string& label() const noexcept { return label_; }
    std::uint64_t draws() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    // Uniform real in [0, 1) built from the top 53 bits.
    double next_uniform() noexcept;

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t next_below(std::uint64_t n) noexcept;

private:
    std::string label_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

} // namespace felsim::sim
