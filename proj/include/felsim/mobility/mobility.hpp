#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "felsim/ccn/network.hpp"
#include "felsim/sim/random.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::mobility {

enum class HandoverScheme : std::uint8_t { BaselineRedirect, FelUpstreamCache };
enum class MobilityLabel : std::uint8_t { Home, Moved };

std::string_view to_string(HandoverScheme s);
HandoverScheme parse_scheme(std::string_view text);

struct MobileRequester {
    NodeId requester;
    NodeId home_ap;
    NodeId current_ap;
    std::vector<NodeId> d2d_peers;

    MobilityLabel label() const noexcept { return current_ap == home_ap ? MobilityLabel::Home : MobilityLabel::Moved; }
};

struct HandoverEvent {
    NodeId requester;
    NodeId from_ap;
    NodeId to_ap;
    SimTime at;
    HandoverScheme scheme = HandoverScheme::BaselineRedirect;
};

struct HandoverResult {
    HandoverEvent event;
    // Names pinned at the shared base station (upstream caching).
    std::vector<ccn::ContentName> pinned;
    std::optional<NodeId> pinned_at;
    // Names whose next request takes the redirection path (baseline).
    std::vector<ccn::ContentName> redirected;
    std::size_t abandoned = 0;
    std::size_t reexpressed = 0;
    bool epoch_triggered = false;
};

/// Tracks where requesters are attached and applies the two handover schemes.
class MobilityManager {
public:
    /// recent_window: number of distinct recently requested names remembered per requester.
    MobilityManager(ccn::CcnNetwork& network, std::size_t recent_window = 5);

    const MobileRequester& requester(NodeId id) const;
    std::vector<NodeId> requesters() const;

    /// Remembers a name the requester just asked for.
    void note_request(NodeId requester, const ccn::ContentName& name);
    std::vector<ccn::ContentName> recent(NodeId requester) const;

    /// Moves a requester to another access point. on_fel_epoch, when set, is
    /// invoked once to fire the event-driven learning epoch.
    /// Throws InvalidHandover for same-AP moves or APs without a shared BS/gateway.
    HandoverResult handover(NodeId requester, NodeId to_ap, HandoverScheme scheme,
                            const std::function<void()>& on_fel_epoch = {});

    /// First hop for a request that must take the redirection path, consuming it.
    std::optional<NodeId> take_redirect(NodeId requester, const ccn::ContentName& name);

    /// One-way latency of new AP -> gateway -> old AP as seen from the requester.
    Millis redirect_latency(NodeId requester, NodeId from_ap, NodeId to_ap) const;

private:
    struct Redirect {
        NodeId old_ap;
        std::set<ccn::ContentName> names;
    };

    ccn::CcnNetwork& network_;
    std::size_t recent_window_;
    std::map<NodeId, MobileRequester> requesters_;
    std::map<NodeId, std::deque<ccn::ContentName>> recent_;
    std::map<NodeId, Redirect> redirects_;
};

enum class LinkArm : std::uint8_t { RAN, D2D };

std::string_view to_string(LinkArm arm);

/// Epsilon-greedy RAN/D2D choice on running mean latency. Each available arm
/// is tried once before greedy selection starts; ties go to RAN.
class LinkSelector {
public:
    LinkSelector(NodeId requester, double epsilon, bool ran_available = true, bool d2d_available = true);

    NodeId requester() const noexcept { return requester_; }
    double epsilon() const noexcept { return epsilon_; }

    LinkArm select(sim::RandomStream& stream) const;
    void record(LinkArm arm, Millis latency);

    double mean(LinkArm arm) const;
    std::uint64_t pulls(LinkArm arm) const { return pulls_[index(arm)]; }
    Millis total(LinkArm arm) const { return sums_[index(arm)]; }

private:
    static std::size_t index(LinkArm arm) { return arm == LinkArm::RAN ? 0 : 1; }

    NodeId requester_;
    double epsilon_;
    bool available_[2];
    Millis sums_[2] = {0, 0};
    std::uint64_t pulls_[2] = {0, 0};
};

/// Lowest-id peer whose store currently holds `name`.
std::optional<NodeId> d2d_availability(const ccn::CcnNetwork& network, const std::vector<NodeId>& peers,
                                       const ccn::ContentName& name);

/// Round trip over the cheapest D2D link, charged when a D2D attempt misses.
Millis d2d_probe_latency(const Topology& topology, NodeId requester);

} // namespace felsim::mobility
