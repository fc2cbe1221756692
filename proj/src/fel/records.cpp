#include "felsim/fel/records.hpp"

#include <algorithm>

#include "felsim/error.hpp"

namespace felsim::fel {

PermissionGrant RecordStore::grant_access(NodeId requester, const std::string& agent, SimTime now) {
    if (!knows_domain(agent)) throw UnknownDomain("no fog domain named '" + agent + "'");
    PermissionGrant g{requester, agent, now, true};
    grants_.insert_or_assign({requester, agent}, g);
    return g;
}

void RecordStore::revoke_access(NodeId requester, const std::string& agent, SimTime) {
    if (auto it = grants_.find({requester, agent}); it != grants_.end()) it->second.active = false;
}

bool RecordStore::has_grant(NodeId requester, const std::string& agent) const {
    const auto it = grants_.find({requester, agent});
    return it != grants_.end() && it->second.active;
}

std::vector<PermissionGrant> RecordStore::grants() const {
    std::vector<PermissionGrant> out;
    for (const auto& [key, g] : grants_) out.push_back(g);
    return out;
}

void RecordStore::log_issue(NodeId requester, const ccn::ContentName& name, SimTime at) {
    issues_.push_back(IssueRecord{requester, name, at});
}

void RecordStore::log_retrieval(RetrievalRecord record) {
    if (record.satisfied_at < record.issued_at) throw InvariantViolation("retrieval satisfied before it was issued");
    retrievals_.push_back(std::move(record));
}

std::vector<IssueRecord> RecordStore::issues_in(SimTime from, SimTime to) const {
    const auto lo = std::lower_bound(issues_.begin(), issues_.end(), from,
                                     [](const IssueRecord& r, SimTime t) { return r.issued_at < t; });
    std::vector<IssueRecord> out;
    for (auto it = lo; it != issues_.end() && it->issued_at < to; ++it) out.push_back(*it);
    return out;
}

std::vector<RetrievalRecord> RecordStore::retrievals_in(SimTime from, SimTime to) const {
    const auto lo = std::lower_bound(retrievals_.begin(), retrievals_.end(), from,
                                     [](const RetrievalRecord& r, SimTime t) { return r.satisfied_at < t; });
    std::vector<RetrievalRecord> out;
    for (auto it = lo; it != retrievals_.end() && it->satisfied_at < to; ++it) out.push_back(*it);
    return out;
}

std::vector<IssueRecord> RecordStore::granted_issues(const std::string& agent, SimTime from, SimTime to) const {
    auto all = issues_in(from, to);
    std::erase_if(all, [&](const IssueRecord& r) { return !has_grant(r.requester, agent); });
    return all;
}

} // namespace felsim::fel
