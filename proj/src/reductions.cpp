#include "domainminer/reductions.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace domainminer {

UndirectedGraph UndirectedGraph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw ArityError("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u > v) std::swap(u, v);
        if (u == v) throw ArityError("self-loops are not allowed");
        if (u < 0 || v >= n) throw ArityError("vertex index out of range");
        if (!seen.insert({u, v}).second) throw ArityError("duplicate edge");
    }
    return UndirectedGraph{n, std::move(edges)};
}

UndirectedGraph UndirectedGraph::complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return make(n, std::move(edges));
}

UndirectedGraph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kind;
        if (!(ss >> kind)) continue;
        if (kind == "g") {
            if (n >= 0) throw ParseError("duplicate 'g' line", line_no);
            if (!(ss >> n) || n < 1) throw ParseError("expected 'g <n>' with n >= 1", line_no);
        } else if (kind == "e") {
            int u, v;
            if (n < 0) throw ParseError("'e' line before 'g' line", line_no);
            if (!(ss >> u >> v)) throw ParseError("expected 'e <u> <v>'", line_no);
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError("vertex index out of range", line_no);
            edges.emplace_back(u, v);
        } else {
            throw ParseError("expected 'g' or 'e' line", line_no);
        }
        std::string extra;
        if (ss >> extra) throw ParseError("trailing tokens", line_no);
    }
    if (n < 0) throw ParseError("missing 'g <n>' line");
    try {
        return UndirectedGraph::make(n, std::move(edges));
    } catch (const ArityError& e) {
        throw ParseError(e.what());
    }
}

UndirectedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_graph(in);
}

DbpmInstance three_color_to_dbpm(const UndirectedGraph& h) {
    const int V = h.n;
    const int E = static_cast<int>(h.edges.size());
    const int n = 4 * V + 3 * E; // choice entities, vertex entities, edge entities
    const int k = V + E;         // one right per vertex, one per edge

    // Entity layout: x[v][i] = 3v + i, y[v] = 3V + v, z[e][i] = 4V + 3e + i.
    auto x = [&](int v, int i) { return 3 * v + i; };
    auto y = [&](int v) { return 3 * V + v; };
    auto z = [&](int e, int i) { return 4 * V + 3 * e + i; };
    // Right layout: vertex rights first, then edge rights.
    auto ra = [&](int v) { return v; };
    auto rb = [&](int e) { return V + e; };

    PartialMatrix psm(n, k, Cell::Star);

    for (int v = 0; v < V; ++v) {
        for (int i = 0; i < 3; ++i) psm.set(x(v, i), ra(v), x(v, i), Cell::One);
        psm.set(y(v), ra(v), y(v), Cell::One);
    }
    for (int e = 0; e < E; ++e)
        for (int i = 0; i < 3; ++i) psm.set(z(e, i), rb(e), z(e, i), Cell::One);

    // Choice entities carry only their own vertex's self-loop...
    for (int v = 0; v < V; ++v)
        for (int i = 0; i < 3; ++i)
            for (int u = 0; u < V; ++u)
                if (u != v) psm.set(x(v, i), ra(u), x(v, i), Cell::Zero);
    // ...and never link to the sibling choices of the same vertex.
    for (int v = 0; v < V; ++v)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) psm.set(x(v, i), ra(v), x(v, j), Cell::Zero);
    // Vertex entities reject other vertices' rights and incident edge rights.
    for (int v = 0; v < V; ++v) {
        for (int u = 0; u < V; ++u)
            if (u != v) psm.set(y(v), ra(u), y(v), Cell::Zero);
        for (int e = 0; e < E; ++e)
            if (h.incident(v, static_cast<std::size_t>(e))) psm.set(y(v), rb(e), y(v), Cell::Zero);
    }
    // Edge entities reject rights of non-endpoint vertices.
    for (int e = 0; e < E; ++e)
        for (int i = 0; i < 3; ++i)
            for (int u = 0; u < V; ++u)
                if (!h.incident(u, static_cast<std::size_t>(e)))
                    psm.set(z(e, i), ra(u), z(e, i), Cell::Zero);
    // Edge entities only pair with the same color slot of their endpoints.
    for (int e = 0; e < E; ++e) {
        auto [u, v] = h.edges[static_cast<std::size_t>(e)];
        for (int end : {u, v})
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (i != j) {
                        psm.set(z(e, i), ra(end), x(end, j), Cell::Zero);
                        psm.set(x(end, j), ra(end), z(e, i), Cell::Zero);
                    }
    }
    return DbpmInstance{3 * V, std::move(psm)};
}

DbpmInstance three_color_to_db(const UndirectedGraph& h) {
    const int V = h.n;
    const int E = static_cast<int>(h.edges.size());
    const int n = 3 + V + 3 * E;
    PartialMatrix psm(n, 1, Cell::Star);

    auto vcol = [&](int v) { return 3 + v; };
    auto base = [&](int e) { return 3 + V + 3 * e; };

    // The columns owned by edge rows are denied everywhere.
    for (int u = 0; u < n; ++u)
        for (int c = 3 + V; c < n; ++c) psm.set(u, 0, c, Cell::Zero);

    // Color rows: fixed identity pattern on the color columns.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) psm.set(i, 0, j, i == j ? Cell::One : Cell::Zero);

    // Vertex rows: own a single diagonal grant.
    for (int v = 0; v < V; ++v) psm.set(vcol(v), 0, vcol(v), Cell::One);

    // Edge rows: the three rows of edge (u,v) carry the patterns 10, 01, 00
    // on the two endpoint columns.
    for (int e = 0; e < E; ++e) {
        auto [u, v] = h.edges[static_cast<std::size_t>(e)];
        const int b = base(e);
        psm.set(b + 0, 0, vcol(u), Cell::One);
        psm.set(b + 0, 0, vcol(v), Cell::Zero);
        psm.set(b + 1, 0, vcol(u), Cell::Zero);
        psm.set(b + 1, 0, vcol(v), Cell::One);
        psm.set(b + 2, 0, vcol(u), Cell::Zero);
        psm.set(b + 2, 0, vcol(v), Cell::Zero);
    }
    return DbpmInstance{3, std::move(psm)};
}

DbpmInstance db_to_dtepm(int m, const PartialMatrix& psm) {
    if (psm.right_count() != 1) throw ArityError("the transformation requires a single right");
    const int n = psm.entity_count();
    const int big = 2 * n + 1;
    const int total = 3 * n + 1;
    PartialMatrix out(total, 1, Cell::Zero);

    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) out.set(u, 0, v, psm.at(u, 0, v));

    // Fixed block: paired spikes on top, a widening band below. Its rows are
    // pairwise distinct while its columns collapse into n+1 classes.
    for (int i = 0; i < big; ++i)
        for (int j = 0; j < big; ++j) {
            bool one;
            if (i < n) {
                one = (j == i) || (j == big - 1 - i);
            } else {
                int spread = i - n;
                one = (j >= n - spread) && (j <= n + spread);
            }
            if (one) out.set(n + i, 0, n + j, Cell::One);
        }
    return DbpmInstance{m + big, std::move(out)};
}

bool is_three_colorable(const UndirectedGraph& h) {
    if (h.n > kMaxColorVertices)
        throw SizeLimitError("3-colorability search limited to " +
                             std::to_string(kMaxColorVertices) + " vertices");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(h.n));
    for (auto [u, v] : h.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<int> color(static_cast<std::size_t>(h.n), -1);
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == h.n) return true;
        for (int c = 0; c < 3; ++c) {
            bool ok = true;
            for (int w : adj[static_cast<std::size_t>(v)])
                if (color[static_cast<std::size_t>(w)] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[static_cast<std::size_t>(v)] = c;
            if (self(self, v + 1)) return true;
            color[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

namespace {

// Partition search: place entities into at most m blocks, maintaining for
// every (block, right, block) slot the value forced so far (-1 none, 0, 1).
// A placement fails when a fixed cell contradicts the slot's forced value.
// Feasibility of a full partition is exactly feasibility of the budget: Star
// cells can always be filled to match the forced slot values.
class BlockSearch {
  public:
    BlockSearch(const PartialMatrix& psm, int m)
        : psm_(psm), n_(psm.entity_count()), k_(psm.right_count()), m_(m),
          block_(static_cast<std::size_t>(n_), -1),
          force_(static_cast<std::size_t>(m) * k_ * m, -1) {}

    bool run() { return place(0, 0); }

  private:
    int8_t& slot(int p, int a, int q) {
        return force_[(static_cast<std::size_t>(p) * k_ + a) * m_ + q];
    }

    // Try to record that block pair (p,q) must have value v under right a.
    bool force(int p, int a, int q, int8_t v, std::vector<std::size_t>& touched) {
        int8_t& s = slot(p, a, q);
        if (s == v) return true;
        if (s != -1) return false;
        s = v;
        touched.push_back((static_cast<std::size_t>(p) * k_ + a) * m_ + q);
        return true;
    }

    bool place(int entity, int used) {
        if (entity == n_) return true;
        int limit = std::min(used + 1, m_); // first-fit symmetry breaking
        for (int b = 0; b < limit; ++b) {
            std::vector<std::size_t> touched;
            bool ok = true;
            for (int a = 0; a < k_ && ok; ++a) {
                Cell diag = psm_.at(entity, a, entity);
                if (diag != Cell::Star)
                    ok = force(b, a, b, diag == Cell::One ? 1 : 0, touched);
                for (int other = 0; other < entity && ok; ++other) {
                    int ob = block_[static_cast<std::size_t>(other)];
                    Cell fwd = psm_.at(entity, a, other);
                    if (fwd != Cell::Star)
                        ok = force(b, a, ob, fwd == Cell::One ? 1 : 0, touched);
                    if (!ok) break;
                    Cell bwd = psm_.at(other, a, entity);
                    if (bwd != Cell::Star)
                        ok = force(ob, a, b, bwd == Cell::One ? 1 : 0, touched);
                }
            }
            if (ok) {
                block_[static_cast<std::size_t>(entity)] = b;
                if (place(entity + 1, std::max(used, b + 1))) return true;
                block_[static_cast<std::size_t>(entity)] = -1;
            }
            for (std::size_t idx : touched) force_[idx] = -1;
        }
        return false;
    }

    const PartialMatrix& psm_;
    int n_, k_, m_;
    std::vector<int> block_;
    std::vector<int8_t> force_;
};

// Same idea restricted to rows: group rows so no column sees both a fixed
// grant and a fixed denial within a group.
class RowSearch {
  public:
    RowSearch(const PartialMatrix& psm, int m)
        : psm_(psm), n_(psm.entity_count()), k_(psm.right_count()), m_(m),
          force_(static_cast<std::size_t>(m) * k_ * n_, -1) {}

    bool run() { return place(0, 0); }

  private:
    bool place(int row, int used) {
        if (row == n_) return true;
        int limit = std::min(used + 1, m_);
        for (int b = 0; b < limit; ++b) {
            std::vector<std::size_t> touched;
            bool ok = true;
            for (int a = 0; a < k_ && ok; ++a)
                for (int v = 0; v < n_; ++v) {
                    Cell c = psm_.at(row, a, v);
                    if (c == Cell::Star) continue;
                    std::size_t idx = (static_cast<std::size_t>(b) * k_ + a) * n_ + v;
                    int8_t want = c == Cell::One ? 1 : 0;
                    if (force_[idx] == want) continue;
                    if (force_[idx] != -1) {
                        ok = false;
                        break;
                    }
                    force_[idx] = want;
                    touched.push_back(idx);
                }
            if (ok && place(row + 1, std::max(used, b + 1))) return true;
            for (std::size_t idx : touched) force_[idx] = -1;
        }
        return false;
    }

    const PartialMatrix& psm_;
    int n_, k_, m_;
    std::vector<int8_t> force_;
};

} // namespace

bool dbpm_feasible(const PartialMatrix& psm, int m) {
    if (m < 1) throw ArityError("class budget must be at least 1");
    if (m >= psm.entity_count()) return true; // singleton blocks always work
    return BlockSearch(psm, m).run();
}

bool db_feasible(const PartialMatrix& psm, int m) {
    if (m < 1) throw ArityError("class budget must be at least 1");
    if (m >= psm.entity_count()) return true;
    return RowSearch(psm, m).run();
}

} // namespace domainminer
