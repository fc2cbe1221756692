#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "felsim/ccn/name.hpp"
#include "felsim/sim/time.hpp"
#include "felsim/topology/topology.hpp"

namespace felsim::fel {

// Records carry the node index only; no user payload is kept.
struct RetrievalRecord {
    NodeId requester;
    ccn::ContentName name;
    SimTime issued_at;
    SimTime satisfied_at;
    NodeId served_by;
};

struct IssueRecord {
    NodeId requester;
    ccn::ContentName name;
    SimTime issued_at;
};

struct PermissionGrant {
    NodeId requester;
    std::string agent;
    SimTime granted_at;
    bool active = true;
};

/// User-side learning interface: logs retrievals and gates per-user access
/// behind explicit grants to a fog domain's agent.
class RecordStore {
public:
    void register_domain(const std::string& domain_id) { domains_.insert(domain_id); }
    bool knows_domain(const std::string& domain_id) const { return domains_.contains(domain_id); }

    /// Throws UnknownDomain.
    PermissionGrant grant_access(NodeId requester, const std::string& agent, SimTime now);
    void revoke_access(NodeId requester, const std::string& agent, SimTime now);
    bool has_grant(NodeId requester, const std::string& agent) const;
    std::vector<PermissionGrant> grants() const;

    void log_issue(NodeId requester, const ccn::ContentName& name, SimTime at);
    void log_retrieval(RetrievalRecord record);

    // Aggregate, desensitized views over [from, to).
    std::vector<IssueRecord> issues_in(SimTime from, SimTime to) const;
    std::vector<RetrievalRecord> retrievals_in(SimTime from, SimTime to) const;

    /// Per-user issue records in [from, to), only for requesters that granted `agent` access.
    std::vector<IssueRecord> granted_issues(const std::string& agent, SimTime from, SimTime to) const;

private:
    std::set<std::string> domains_;
    std::map<std::pair<NodeId, std::string>, PermissionGrant> grants_;
    // Both logs are appended in non-decreasing time order.
    std::vector<IssueRecord> issues_;
    std::vector<RetrievalRecord> retrievals_;
};

} // namespace felsim::fel
