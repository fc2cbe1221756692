#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "felsim/ccn/catalog.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/sim/time.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::workload {

/// Inverse-CDF sampler for P(i) = i^-s / sum_j j^-s over ranks 1..N.
class ZipfSampler {
public:
    ZipfSampler(std::size_t n, double s);

    std::size_t size() const noexcept { return cdf_.size(); }
    double exponent() const noexcept { return s_; }
    double probability(std::size_t rank) const;

    /// Returns a rank in [1, N].
    std::size_t sample(sim::RandomStream& stream) const;

private:
    double s_;
    std::vector<double> cdf_;
};

struct ZipfModel {
    double s = 1.0;
    double mean_interarrival_ms = 50.0;
};

struct PeriodicModel {
    Millis period_ms = 100;
    std::vector<ccn::ContentName> playlist;
};

struct RequesterProfile {
    NodeId requester;
    std::variant<ZipfModel, PeriodicModel> model;
    ccn::ContentClass cls = ccn::ContentClass::TypeA;
};

/// Throws InvalidSpec if the profile breaks its invariants against the catalog.
void validate(const RequesterProfile& profile, const ccn::ContentCatalog& catalog);

struct NextRequest {
    SimTime fire_at;
    ccn::ContentName name;
};

/// Per-requester request source. Zipf draws an exponential gap and a rank in the
/// requester's class slice; Periodic walks its playlist at a fixed period.
class RequestGenerator {
public:
    RequestGenerator(RequesterProfile profile, const ccn::ContentCatalog& catalog);

    const RequesterProfile& profile() const noexcept { return profile_; }
    NextRequest next_request(SimTime now, sim::RandomStream& stream);

private:
    RequesterProfile profile_;
    std::vector<ccn::ContentName> slice_;
    std::optional<ZipfSampler> zipf_;
    std::size_t playlist_pos_ = 0;
};

} // namespace felsim::workload
