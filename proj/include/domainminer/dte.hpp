#ifndef DOMAINMINER_DTE_HPP
#define DOMAINMINER_DTE_HPP

#include <string>
#include <vector>

#include "domainminer/core.hpp"

namespace domainminer {

// Domain-and-type policy: subjects are classified by domain, objects by type,
// and a |D| x k x |T| permission cube grants (u,a,v) iff
// tbl[delta(u), a, tau(v)] is set.
struct DtePolicy {
    int domain_count = 0;
    int type_count = 0;
    std::vector<int> delta; // entity -> domain
    std::vector<int> tau;   // entity -> type
    std::vector<uint8_t> tbl; // domain-major, then right, then type

    bool tbl_at(int d, int a, int t) const {
        return tbl[(static_cast<std::size_t>(d) * k + a) * type_count + t] != 0;
    }
    int k = 0; // right count, fixed at mining time
};

// u and v grant identical requests as subjects (their rows agree everywhere).
bool row_equivalent(const Digraph& m, int u, int v);
// u and v accept identical requests as objects (their columns agree).
bool col_equivalent(const Digraph& m, int u, int v);

struct ClassCounts {
    int rows;     // distinct rows
    int cols;     // distinct columns
    int combined; // indistinguishability classes
};

ClassCounts counts(const Digraph& m);

// Mine the min-max-optimal enforcing policy: one domain per row class, one
// type per column class, indices in first-occurrence order.
DtePolicy mine_dte(const Digraph& m);

bool dte_enforces(const DtePolicy& policy, const Digraph& m);

// {"domains":…, "types":…, "delta":[..], "tau":[..], "tbl":[[[..],..],..]}
std::string dte_to_json(const DtePolicy& policy, int indent = 2);

} // namespace domainminer

#endif
