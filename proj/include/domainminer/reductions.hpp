#ifndef DOMAINMINER_REDUCTIONS_HPP
#define DOMAINMINER_REDUCTIONS_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "domainminer/core.hpp"

namespace domainminer {

// Simple undirected graph: vertices 0..n-1, edges stored as ordered pairs
// (u < v) numbered by position. No self-loops, no duplicates.
struct UndirectedGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    static UndirectedGraph make(int n, std::vector<std::pair<int, int>> edges);
    static UndirectedGraph complete(int n);

    bool incident(int vertex, std::size_t edge) const {
        return edges[edge].first == vertex || edges[edge].second == vertex;
    }
};

// Edge-list file: "g <n>" then "e <u> <v>" lines, 0-indexed, '#' comments.
UndirectedGraph read_graph(std::istream& in);
UndirectedGraph read_graph_file(const std::string& path);

struct DbpmInstance {
    int m;
    PartialMatrix psm;
};

// Graph 3-colorability -> domain-based policy mining. The produced instance
// has 4|V| + 3|E| entities, |V| + |E| rights and class budget 3|V|; it is
// positive at that budget iff h is 3-colorable.
DbpmInstance three_color_to_dbpm(const UndirectedGraph& h);

// Graph 3-colorability -> row-class bounding with a single right. The
// produced matrix is (3 + |V| + 3|E|) square with budget 3.
DbpmInstance three_color_to_db(const UndirectedGraph& h);

// Row-class bounding -> domain-and-type mining. Grows the matrix by a fixed
// (2n+1)-square block whose row classes dominate the column classes, shifting
// the budget to m + 2n + 1. Requires a single right.
DbpmInstance db_to_dtepm(int m, const PartialMatrix& psm);

// Exhaustive proper-3-coloring test, limited to kMaxColorVertices vertices.
inline constexpr int kMaxColorVertices = 12;
bool is_three_colorable(const UndirectedGraph& h);

// Exact feasibility checks used to cross-validate the reductions at sizes the
// fill-enumeration oracle cannot reach. Both search partitions directly:
// a class budget is feasible iff the entities (rows) can be grouped so that no
// group pair forces a cell to be both granted and denied.
bool dbpm_feasible(const PartialMatrix& psm, int m);
bool db_feasible(const PartialMatrix& psm, int m);

} // namespace domainminer

#endif
