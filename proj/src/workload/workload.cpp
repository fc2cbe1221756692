#include "felsim/workload/workload.hpp"

#include <algorithm>
#include <cmath>

#include "felsim/error.hpp"

namespace felsim::workload {

ZipfSampler::ZipfSampler(std::size_t n, double s) : s_(s) {
    if (n == 0) throw InvalidSpec("Zipf sampler needs at least one item");
    if (!(s > 0.0)) throw InvalidSpec("Zipf exponent must be positive");
    cdf_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += std::pow(static_cast<double>(i + 1), -s);
        cdf_[i] = total;
    }
    for (auto& c : cdf_) c /= total;
    cdf_.back() = 1.0;
}

double ZipfSampler::probability(std::size_t rank) const {
    if (rank < 1 || rank > cdf_.size()) return 0.0;
    return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

std::size_t ZipfSampler::sample(sim::RandomStream& stream) const {
    const double u = stream.next_uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), cdf_.size() - 1)) + 1;
}

void validate(const RequesterProfile& profile, const ccn::ContentCatalog& catalog) {
    if (catalog.slice(profile.cls).empty()) {
        throw InvalidSpec("catalog has no " + std::string(ccn::to_string(profile.cls)) + " items");
    }
    if (const auto* z = std::get_if<ZipfModel>(&profile.model)) {
        if (!(z->s > 0.0)) throw InvalidSpec("Zipf exponent must be positive");
        if (!(z->mean_interarrival_ms > 0.0)) throw InvalidSpec("mean inter-arrival must be positive");
        return;
    }
    const auto& p = std::get<PeriodicModel>(profile.model);
    if (p.period_ms <= 0) throw InvalidSpec("period must be positive");
    if (p.playlist.empty()) throw InvalidSpec("playlist is empty");
    for (const auto& name : p.playlist) {
        const auto* item = catalog.find(name);
        if (!item) throw InvalidSpec("playlist item " + name.str() + " is not in the catalog");
        if (item->cls != profile.cls) throw InvalidSpec("playlist item " + name.str() + " is outside the requester's class");
    }
}

RequestGenerator::RequestGenerator(RequesterProfile profile, const ccn::ContentCatalog& catalog)
    : profile_(std::move(profile)), slice_(catalog.slice(profile_.cls)) {
    validate(profile_, catalog);
    if (const auto* z = std::get_if<ZipfModel>(&profile_.model)) zipf_.emplace(slice_.size(), z->s);
}

NextRequest RequestGenerator::next_request(SimTime now, sim::RandomStream& stream) {
    if (zipf_) {
        const auto& z = std::get<ZipfModel>(profile_.model);
        const double gap = -z.mean_interarrival_ms * std::log1p(-stream.next_uniform());
        const auto rank = zipf_->sample(stream);
        return {now + static_cast<Millis>(std::llround(gap)), slice_[rank - 1]};
    }
    const auto& p = std::get<PeriodicModel>(profile_.model);
    const auto& name = p.playlist[playlist_pos_];
    playlist_pos_ = (playlist_pos_ + 1) % p.playlist.size();
    return {now + p.period_ms, name};
}

} // namespace felsim::workload
