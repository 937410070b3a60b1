#include "domainminer/dte.hpp"

#include <cassert>

#include <json.hpp>

#include "domainminer/summary.hpp"

namespace domainminer {

bool row_equivalent(const Digraph& m, int u, int v) {
    if (u < 0 || u >= m.entity_count() || v < 0 || v >= m.entity_count())
        throw ArityError("entity index out of range");
    for (int a = 0; a < m.right_count(); ++a)
        if (m.out_row(u, a) != m.out_row(v, a)) return false;
    return true;
}

bool col_equivalent(const Digraph& m, int u, int v) {
    if (u < 0 || u >= m.entity_count() || v < 0 || v >= m.entity_count())
        throw ArityError("entity index out of range");
    for (int a = 0; a < m.right_count(); ++a)
        if (m.in_col(u, a) != m.in_col(v, a)) return false;
    return true;
}

namespace {

// First-occurrence class ids under an equivalence test.
template <typename Eq>
std::vector<int> classify(int n, Eq&& eq) {
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    std::vector<int> reps;
    for (int u = 0; u < n; ++u) {
        for (std::size_t c = 0; c < reps.size(); ++c)
            if (eq(reps[c], u)) {
                cls[static_cast<std::size_t>(u)] = static_cast<int>(c);
                break;
            }
        if (cls[static_cast<std::size_t>(u)] < 0) {
            cls[static_cast<std::size_t>(u)] = static_cast<int>(reps.size());
            reps.push_back(u);
        }
    }
    return cls;
}

int class_count(const std::vector<int>& cls) {
    int mx = -1;
    for (int c : cls) mx = std::max(mx, c);
    return mx + 1;
}

} // namespace

ClassCounts counts(const Digraph& m) {
    const int n = m.entity_count();
    auto rows = classify(n, [&](int u, int v) { return row_equivalent(m, u, v); });
    auto cols = classify(n, [&](int u, int v) { return col_equivalent(m, u, v); });
    auto both = classify(n, [&](int u, int v) { return indistinguishable(m, u, v); });
    return ClassCounts{class_count(rows), class_count(cols), class_count(both)};
}

DtePolicy mine_dte(const Digraph& m) {
    const int n = m.entity_count();
    const int k = m.right_count();
    DtePolicy p;
    p.k = k;
    p.delta = classify(n, [&](int u, int v) { return row_equivalent(m, u, v); });
    p.tau = classify(n, [&](int u, int v) { return col_equivalent(m, u, v); });
    p.domain_count = class_count(p.delta);
    p.type_count = class_count(p.tau);

    // Any representative pair works for a (domain, type) cell; the class
    // definitions make the value independent of the choice.
    std::vector<int> dom_rep(static_cast<std::size_t>(p.domain_count), -1);
    std::vector<int> type_rep(static_cast<std::size_t>(p.type_count), -1);
    for (int u = 0; u < n; ++u) {
        if (dom_rep[static_cast<std::size_t>(p.delta[u])] < 0) dom_rep[static_cast<std::size_t>(p.delta[u])] = u;
        if (type_rep[static_cast<std::size_t>(p.tau[u])] < 0) type_rep[static_cast<std::size_t>(p.tau[u])] = u;
    }
    p.tbl.assign(static_cast<std::size_t>(p.domain_count) * k * p.type_count, 0);
    for (int d = 0; d < p.domain_count; ++d)
        for (int a = 0; a < k; ++a)
            for (int t = 0; t < p.type_count; ++t) {
                bool grant = m.has(dom_rep[static_cast<std::size_t>(d)], a, type_rep[static_cast<std::size_t>(t)]);
                p.tbl[(static_cast<std::size_t>(d) * k + a) * p.type_count + t] = grant ? 1 : 0;
            }
#ifndef NDEBUG
    // Well-definedness of the cube: every member pair agrees with its cell.
    for (int u = 0; u < n; ++u)
        for (int a = 0; a < k; ++a)
            for (int v = 0; v < n; ++v)
                assert(m.has(u, a, v) == p.tbl_at(p.delta[u], a, p.tau[v]));
#endif
    return p;
}

bool dte_enforces(const DtePolicy& policy, const Digraph& m) {
    const int n = m.entity_count();
    const int k = m.right_count();
    if (static_cast<int>(policy.delta.size()) != n || static_cast<int>(policy.tau.size()) != n)
        throw ArityError("policy assignment length does not match entity count");
    if (policy.k != k) throw ArityError("policy right count does not match matrix");
    for (int d : policy.delta)
        if (d < 0 || d >= policy.domain_count) throw ArityError("domain index out of range");
    for (int t : policy.tau)
        if (t < 0 || t >= policy.type_count) throw ArityError("type index out of range");

    for (int u = 0; u < n; ++u)
        for (int a = 0; a < k; ++a)
            for (int v = 0; v < n; ++v)
                if (m.has(u, a, v) != policy.tbl_at(policy.delta[u], a, policy.tau[v]))
                    return false;
    return true;
}

std::string dte_to_json(const DtePolicy& policy, int indent) {
    nlohmann::json j;
    j["domains"] = policy.domain_count;
    j["types"] = policy.type_count;
    j["delta"] = policy.delta;
    j["tau"] = policy.tau;
    nlohmann::json tbl = nlohmann::json::array();
    for (int d = 0; d < policy.domain_count; ++d) {
        nlohmann::json per_right = nlohmann::json::array();
        for (int a = 0; a < policy.k; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (int t = 0; t < policy.type_count; ++t) row.push_back(policy.tbl_at(d, a, t) ? 1 : 0);
            per_right.push_back(row);
        }
        tbl.push_back(per_right);
    }
    j["tbl"] = tbl;
    return j.dump(indent);
}

} // namespace domainminer
