#include "domainminer/core.hpp"

#include <algorithm>

namespace domainminer {

Digraph::Digraph(int n, int k, const std::vector<Triple>& edges) : n_(n), k_(k) {
    if (n < 1) throw ArityError("digraph needs at least one entity");
    if (k < 1) throw ArityError("digraph needs at least one access right");
    rows_.assign(static_cast<std::size_t>(n) * k, Bitset(static_cast<std::size_t>(n)));
    cols_.assign(static_cast<std::size_t>(n) * k, Bitset(static_cast<std::size_t>(n)));
    edge_set_.reserve(edges.size() * 2);
    for (const Triple& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.a < 0 || e.a >= k)
            throw ArityError("edge index out of range");
        uint64_t key = pack(e.u, e.a, e.v, n, k);
        if (!edge_set_.insert(key).second) throw ArityError("duplicate edge triple");
        rows_[static_cast<std::size_t>(e.u) * k + e.a].set(static_cast<std::size_t>(e.v));
        cols_[static_cast<std::size_t>(e.v) * k + e.a].set(static_cast<std::size_t>(e.u));
    }
}

std::vector<Triple> Digraph::edges_sorted() const {
    std::vector<Triple> out;
    out.reserve(edge_set_.size());
    for (int u = 0; u < n_; ++u)
        for (int a = 0; a < k_; ++a) {
            const Bitset& row = out_row(u, a);
            for (int v = 0; v < n_; ++v)
                if (row.test(static_cast<std::size_t>(v))) out.push_back(Triple{u, a, v});
        }
    return out;
}

PartialMatrix::PartialMatrix(int n, int k, Cell init) : n_(n), k_(k) {
    if (n < 1) throw ArityError("matrix needs at least one entity");
    if (k < 1) throw ArityError("matrix needs at least one access right");
    cells_.assign(static_cast<std::size_t>(n) * k * n, init);
}

std::vector<std::size_t> PartialMatrix::star_cells() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i] == Cell::Star) out.push_back(i);
    return out;
}

std::size_t PartialMatrix::star_count() const { return count_of(Cell::Star); }

std::size_t PartialMatrix::count_of(Cell c) const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), c));
}

Digraph PartialMatrix::to_digraph() const {
    std::vector<Triple> edges;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] == Cell::Star)
            throw ArityError("matrix has unspecified cells; instantiate it first");
        if (cells_[i] == Cell::One) edges.push_back(unflatten(i));
    }
    return Digraph(n_, k_, edges);
}

PartialMatrix PartialMatrix::from_digraph(const Digraph& g) {
    PartialMatrix psm(g.entity_count(), g.right_count(), Cell::Zero);
    for (const Triple& e : g.edges_sorted()) psm.set(e.u, e.a, e.v, Cell::One);
    return psm;
}

Digraph instantiate(const PartialMatrix& psm, const std::vector<bool>& fill) {
    std::vector<std::size_t> stars = psm.star_cells();
    if (fill.size() != stars.size())
        throw ArityError("fill vector has " + std::to_string(fill.size()) + " entries, matrix has " +
                         std::to_string(stars.size()) + " unspecified cells");
    std::vector<Triple> edges;
    std::size_t next_star = 0;
    for (std::size_t i = 0; i < psm.cell_count(); ++i) {
        Cell c = psm.at_flat(i);
        bool edge = false;
        if (c == Cell::One) {
            edge = true;
        } else if (c == Cell::Star) {
            edge = fill[next_star++];
        }
        if (edge) edges.push_back(psm.unflatten(i));
    }
    return Digraph(psm.entity_count(), psm.right_count(), edges);
}

bool enforces(const DomainPolicy& policy, const Digraph& g) {
    const int n = g.entity_count();
    const int k = g.right_count();
    if (static_cast<int>(policy.assignment.size()) != n)
        throw ArityError("assignment length does not match entity count");
    if (policy.summary.right_count() != k)
        throw ArityError("summary right count does not match digraph");
    const int m = policy.summary.entity_count();
    for (int d : policy.assignment)
        if (d < 0 || d >= m) throw ArityError("domain index out of range");

    for (int u = 0; u < n; ++u)
        for (int a = 0; a < k; ++a)
            for (int v = 0; v < n; ++v)
                if (g.has(u, a, v) != policy.summary.has(policy.assignment[u], a, policy.assignment[v]))
                    return false;
    return true;
}

} // namespace domainminer
