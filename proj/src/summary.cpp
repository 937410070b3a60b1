#include "domainminer/summary.hpp"

#include <algorithm>
#include <numeric>

namespace domainminer {

int EquivalencePartition::class_of(int entity) const {
    int rep = representative[static_cast<std::size_t>(entity)];
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c].front() == rep) return static_cast<int>(c);
    throw IntegrityError("entity has no class");
}

AdjacencySignature adjacency(const Digraph& g, int u, int v) {
    const int k = g.right_count();
    AdjacencySignature sig{Bitset(static_cast<std::size_t>(k)), Bitset(static_cast<std::size_t>(k))};
    for (int a = 0; a < k; ++a) {
        if (g.has(u, a, v)) sig.forward.set(static_cast<std::size_t>(a));
        if (g.has(v, a, u)) sig.backward.set(static_cast<std::size_t>(a));
    }
    return sig;
}

bool indistinguishable(const Digraph& g, int u, int v) {
    const int n = g.entity_count();
    const int k = g.right_count();
    if (u < 0 || u >= n || v < 0 || v >= n) throw ArityError("entity index out of range");
    if (u == v) return true;
    for (int a = 0; a < k; ++a) {
        // The four edges within {u, v} must be all present or all absent.
        bool uu = g.has(u, a, u);
        if (g.has(u, a, v) != uu || g.has(v, a, u) != uu || g.has(v, a, v) != uu) return false;
        // Identical adjacency with every other entity, both directions.
        for (int x = 0; x < n; ++x) {
            if (x == u || x == v) continue;
            if (g.has(u, a, x) != g.has(v, a, x)) return false;
            if (g.has(x, a, u) != g.has(x, a, v)) return false;
        }
    }
    return true;
}

namespace {

// Disjoint sets with union by rank and path compression.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

  private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

} // namespace

SummarizeResult summarize(const Digraph& g) {
    const int n = g.entity_count();
    UnionFind uf(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (uf.find(u) == uf.find(v)) continue;
            if (indistinguishable(g, u, v)) uf.unite(u, v);
        }

    // Re-normalize representatives to the minimum entity index of each class
    // so the output does not depend on union order.
    std::vector<int> min_rep(static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
        int root = uf.find(u);
        if (min_rep[root] < 0) min_rep[root] = u; // first member in index order is the minimum
    }
    EquivalencePartition part;
    part.representative.resize(static_cast<std::size_t>(n));
    std::vector<int> reps;
    std::vector<int> domain_of_entity(static_cast<std::size_t>(n), -1);
    for (int u = 0; u < n; ++u) {
        int rep = min_rep[uf.find(u)];
        part.representative[static_cast<std::size_t>(u)] = rep;
        if (rep == u) reps.push_back(u);
    }
    std::vector<int> domain_of_rep(static_cast<std::size_t>(n), -1);
    for (std::size_t d = 0; d < reps.size(); ++d) domain_of_rep[reps[d]] = static_cast<int>(d);
    part.classes.assign(reps.size(), {});
    for (int u = 0; u < n; ++u) {
        int d = domain_of_rep[part.representative[static_cast<std::size_t>(u)]];
        domain_of_entity[static_cast<std::size_t>(u)] = d;
        part.classes[static_cast<std::size_t>(d)].push_back(u);
    }

    // Summary = subgraph induced by the representatives, relabelled densely.
    std::vector<Triple> edges;
    for (std::size_t p = 0; p < reps.size(); ++p)
        for (int a = 0; a < g.right_count(); ++a)
            for (std::size_t q = 0; q < reps.size(); ++q)
                if (g.has(reps[p], a, reps[q]))
                    edges.push_back(Triple{static_cast<int>(p), a, static_cast<int>(q)});
    DomainPolicy policy{Digraph(static_cast<int>(reps.size()), g.right_count(), edges),
                        std::move(domain_of_entity)};
    return SummarizeResult{std::move(policy), std::move(part)};
}

namespace {

// Backtracking search for a surjective strong homomorphism g -> h. Partial
// maps are pruned as soon as an assigned pair violates the edge biconditional.
bool surjective_strong_hom_exists(const Digraph& g, const Digraph& h) {
    const int n = g.entity_count();
    const int hn = h.entity_count();
    if (hn > n) return false;
    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<int> used(static_cast<std::size_t>(hn), 0);

    auto consistent = [&](int u, int pu) {
        for (int w = 0; w < n; ++w) {
            if (image[static_cast<std::size_t>(w)] < 0 && w != u) continue;
            int pw = (w == u) ? pu : image[static_cast<std::size_t>(w)];
            for (int a = 0; a < g.right_count(); ++a) {
                if (g.has(u, a, w) != h.has(pu, a, pw)) return false;
                if (g.has(w, a, u) != h.has(pw, a, pu)) return false;
            }
        }
        return true;
    };

    int unused = hn;
    auto rec = [&](auto&& self, int u) -> bool {
        if (u == n) return unused == 0;
        if (unused > n - u) return false; // not enough entities left to cover h
        for (int p = 0; p < hn; ++p) {
            if (!consistent(u, p)) continue;
            image[static_cast<std::size_t>(u)] = p;
            if (used[static_cast<std::size_t>(p)]++ == 0) --unused;
            if (self(self, u + 1)) return true;
            if (--used[static_cast<std::size_t>(p)] == 0) ++unused;
            image[static_cast<std::size_t>(u)] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

} // namespace

bool is_summary_of(const Digraph& h, const Digraph& g) {
    if (g.entity_count() > kMaxSummaryCheck || h.entity_count() > kMaxSummaryCheck)
        throw SizeLimitError("is_summary_of is exponential and limited to " +
                             std::to_string(kMaxSummaryCheck) + " entities");
    if (h.right_count() != g.right_count()) throw ArityError("right counts differ");
    // Irreducibility: no two distinct vertices of h may be indistinguishable.
    const int hn = h.entity_count();
    for (int u = 0; u < hn; ++u)
        for (int v = u + 1; v < hn; ++v)
            if (indistinguishable(h, u, v)) return false;
    return surjective_strong_hom_exists(g, h);
}

} // namespace domainminer
