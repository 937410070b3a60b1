#ifndef DOMAINMINER_CORE_HPP
#define DOMAINMINER_CORE_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "domainminer/bitset.hpp"
#include "domainminer/errors.hpp"

namespace domainminer {

// An access request: entity u exercises right a against entity v.
struct Triple {
    int u, a, v;
    bool operator==(const Triple& o) const { return u == o.u && a == o.a && v == o.v; }
    bool operator<(const Triple& o) const {
        return std::tie(u, a, v) < std::tie(o.u, o.a, o.v);
    }
};

// Edge-labelled directed graph over n entities and k access rights.
// Equivalently a complete n x k x n access-control matrix: an edge is a grant,
// the absence of an edge is a denial. Immutable once constructed.
//
// Storage is dual: a hash set of packed triples plus per-(entity,right) row and
// column bitsets. The bitsets back the linear-time equivalence tests.
class Digraph {
  public:
    Digraph(int n, int k, const std::vector<Triple>& edges);

    int entity_count() const { return n_; }
    int right_count() const { return k_; }
    std::size_t edge_count() const { return edge_set_.size(); }

    bool has(int u, int a, int v) const { return out_row(u, a).test(static_cast<std::size_t>(v)); }

    // Out-adjacency of u under right a, one bit per target entity.
    const Bitset& out_row(int u, int a) const { return rows_[static_cast<std::size_t>(u) * k_ + a]; }
    // In-adjacency of v under right a, one bit per source entity.
    const Bitset& in_col(int v, int a) const { return cols_[static_cast<std::size_t>(v) * k_ + a]; }

    // Edges as sorted triples (deterministic iteration order for output).
    std::vector<Triple> edges_sorted() const;

    static uint64_t pack(int u, int a, int v, int n, int k) {
        return (static_cast<uint64_t>(u) * k + a) * n + v;
    }

  private:
    int n_ = 0, k_ = 0;
    std::unordered_set<uint64_t> edge_set_;
    std::vector<Bitset> rows_, cols_;
};

enum class Cell : uint8_t { Zero = 0, One = 1, Star = 2 };

// Partially specified access-control matrix: each cell is a grant (One), a
// denial (Zero) or missing data (Star). The three cell kinds partition the
// n x k x n index cube.
class PartialMatrix {
  public:
    PartialMatrix(int n, int k, Cell init = Cell::Star);

    int entity_count() const { return n_; }
    int right_count() const { return k_; }
    std::size_t cell_count() const { return cells_.size(); }

    std::size_t index(int u, int a, int v) const {
        check_range(u, a, v);
        return (static_cast<std::size_t>(u) * k_ + a) * n_ + v;
    }
    Cell at(int u, int a, int v) const { return cells_[index(u, a, v)]; }
    Cell at_flat(std::size_t i) const { return cells_[i]; }
    void set(int u, int a, int v, Cell c) { cells_[index(u, a, v)] = c; }
    void set_flat(std::size_t i, Cell c) { cells_[i] = c; }

    // Flat indices of all Star cells in canonical row-major (u, a, v) order.
    // This order fixes fill vectors and SAT variable numbering.
    std::vector<std::size_t> star_cells() const;
    std::size_t star_count() const;

    std::size_t count_of(Cell c) const;

    Triple unflatten(std::size_t i) const {
        int v = static_cast<int>(i % n_);
        std::size_t r = i / n_;
        int a = static_cast<int>(r % k_);
        int u = static_cast<int>(r / k_);
        return Triple{u, a, v};
    }

    // A matrix with no Star cells viewed as a digraph.
    Digraph to_digraph() const;
    static PartialMatrix from_digraph(const Digraph& g);

    // Optional external names; empty vectors mean "unnamed". When present they
    // have exactly n_ / k_ entries.
    std::vector<std::string> entity_names;
    std::vector<std::string> right_names;

    bool operator==(const PartialMatrix& o) const {
        return n_ == o.n_ && k_ == o.k_ && cells_ == o.cells_ &&
               entity_names == o.entity_names && right_names == o.right_names;
    }

  private:
    void check_range(int u, int a, int v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_ || a < 0 || a >= k_)
            throw ArityError("matrix index out of range");
    }
    int n_, k_;
    std::vector<Cell> cells_;
};

// Resolve every Star cell of psm with the corresponding entry of fill (given
// in canonical Star order) and return the resulting digraph.
Digraph instantiate(const PartialMatrix& psm, const std::vector<bool>& fill);

// A protection-domain policy: a summary digraph whose vertices are domains,
// plus a total assignment of entities to domains.
struct DomainPolicy {
    Digraph summary;
    std::vector<int> assignment; // entity -> domain index

    int domain_count() const { return summary.entity_count(); }
};

// True iff the policy grants exactly the requests g grants: for all (u, a, v),
// (u,a,v) in E(g) iff (assignment[u], a, assignment[v]) in E(summary).
// Equivalently, the assignment is a strong homomorphism from g to the summary.
bool enforces(const DomainPolicy& policy, const Digraph& g);

} // namespace domainminer

#endif
