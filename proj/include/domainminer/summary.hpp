#ifndef DOMAINMINER_SUMMARY_HPP
#define DOMAINMINER_SUMMARY_HPP

#include <vector>

#include "domainminer/core.hpp"

namespace domainminer {

// Partition of the entity set into indistinguishability classes. The
// representative of each class is its minimum entity index, so the partition
// is independent of merge order.
struct EquivalencePartition {
    std::vector<int> representative;    // entity -> representative entity
    std::vector<std::vector<int>> classes; // ordered by representative, members ascending

    int class_count() const { return static_cast<int>(classes.size()); }
    // Dense class index of an entity (position of its representative).
    int class_of(int entity) const;
};

// Signed adjacency between an ordered pair of entities: +a when (u,a,v) is an
// edge, -a when (v,a,u) is.
struct AdjacencySignature {
    Bitset forward;  // one bit per right: (u,a,v) present
    Bitset backward; // one bit per right: (v,a,u) present

    bool operator==(const AdjacencySignature& o) const {
        return forward == o.forward && backward == o.backward;
    }
    bool operator!=(const AdjacencySignature& o) const { return !(*this == o); }
};

AdjacencySignature adjacency(const Digraph& g, int u, int v);

// True iff u and v have identical access-control characteristics: for every
// right, the four edges among {u,v} are all present or all absent, and u and v
// relate identically to every other entity in both directions.
bool indistinguishable(const Digraph& g, int u, int v);

struct SummarizeResult {
    DomainPolicy policy;
    EquivalencePartition partition;
};

// Compute the minimal summary of g and the witnessing strong homomorphism.
// The summary is the subgraph induced by the class representatives, relabelled
// to dense domain indices in representative order. O(k n^3).
SummarizeResult summarize(const Digraph& g);

// Decide whether h is a summary of g: some surjective strong homomorphism
// g -> h exists and h cannot be summarized further. Exponential search;
// refuses digraphs with more than kMaxSummaryCheck entities.
inline constexpr int kMaxSummaryCheck = 10;
bool is_summary_of(const Digraph& h, const Digraph& g);

} // namespace domainminer

#endif
