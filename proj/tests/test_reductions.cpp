#include <doctest.h>

#include <sstream>

#include "domainminer/dte.hpp"
#include "domainminer/oracle.hpp"
#include "domainminer/reductions.hpp"
#include "domainminer/solve.hpp"
#include "domainminer/summary.hpp"
#include "test_util.hpp"

using namespace domainminer;

namespace {

// All graphs on n labelled vertices, by edge-subset mask.
std::vector<UndirectedGraph> all_graphs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::vector<UndirectedGraph> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << pairs.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) edges.push_back(pairs[i]);
        out.push_back(UndirectedGraph::make(n, std::move(edges)));
    }
    return out;
}

UndirectedGraph petersen() {
    return UndirectedGraph::make(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                      {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}});
}

} // namespace

TEST_CASE("graph construction and file parsing") {
    CHECK_THROWS_AS(UndirectedGraph::make(2, {{0, 0}}), ArityError);
    CHECK_THROWS_AS(UndirectedGraph::make(2, {{0, 1}, {1, 0}}), ArityError);
    CHECK_THROWS_AS(UndirectedGraph::make(2, {{0, 2}}), ArityError);

    std::stringstream good("# a triangle\ng 3\ne 0 1\ne 1 2\ne 0 2\n");
    UndirectedGraph g = read_graph(good);
    CHECK(g.n == 3);
    CHECK(g.edges.size() == 3);

    std::stringstream bad1("e 0 1\n");
    CHECK_THROWS_AS(read_graph(bad1), ParseError);
    std::stringstream bad2("g 2\ne 0 5\n");
    CHECK_THROWS_AS(read_graph(bad2), ParseError);
}

TEST_CASE("3-colorability oracle") {
    CHECK(is_three_colorable(UndirectedGraph::complete(3)));
    CHECK_FALSE(is_three_colorable(UndirectedGraph::complete(4)));
    CHECK(is_three_colorable(petersen()));
    CHECK_THROWS_AS(is_three_colorable(UndirectedGraph{13, {}}), SizeLimitError);
}

TEST_CASE("dbpm reduction: shape for a single vertex") {
    UndirectedGraph h = UndirectedGraph::make(1, {});
    DbpmInstance inst = three_color_to_dbpm(h);
    CHECK(inst.m == 3);
    CHECK(inst.psm.entity_count() == 4);
    CHECK(inst.psm.right_count() == 1);
    // Choice entities carry their own self-loop and exclude the siblings.
    for (int i = 0; i < 3; ++i) CHECK(inst.psm.at(i, 0, i) == Cell::One);
    CHECK(inst.psm.at(3, 0, 3) == Cell::One);
    CHECK(inst.psm.at(0, 0, 1) == Cell::Zero);
    CHECK(inst.psm.at(1, 0, 0) == Cell::Zero);
    CHECK(inst.psm.at(0, 0, 3) == Cell::Star);
}

TEST_CASE("dbpm reduction: entity/right counts follow the construction") {
    UndirectedGraph k3 = UndirectedGraph::complete(3);
    DbpmInstance inst = three_color_to_dbpm(k3);
    CHECK(inst.m == 9);
    CHECK(inst.psm.entity_count() == 4 * 3 + 3 * 3);
    CHECK(inst.psm.right_count() == 3 + 3);

    UndirectedGraph k4 = UndirectedGraph::complete(4);
    DbpmInstance inst4 = three_color_to_dbpm(k4);
    CHECK(inst4.m == 12);
    CHECK(inst4.psm.entity_count() == 4 * 4 + 3 * 6);
    CHECK(inst4.psm.right_count() == 4 + 6);
}

TEST_CASE("dbpm reduction: K3 feasible at its budget, K4 not") {
    DbpmInstance k3 = three_color_to_dbpm(UndirectedGraph::complete(3));
    CHECK(dbpm_feasible(k3.psm, k3.m));
    DbpmInstance k4 = three_color_to_dbpm(UndirectedGraph::complete(4));
    CHECK_FALSE(dbpm_feasible(k4.psm, k4.m));
}

TEST_CASE("dbpm reduction: choice entities stay pairwise distinct under every fill") {
    // Exhaustive over all fills for the single-vertex instance.
    DbpmInstance inst = three_color_to_dbpm(UndirectedGraph::make(1, {}));
    std::size_t stars = inst.psm.star_count();
    REQUIRE(stars <= 10);
    for (uint64_t mask = 0; mask < (uint64_t(1) << stars); ++mask) {
        std::vector<bool> fill;
        for (std::size_t s = 0; s < stars; ++s) fill.push_back(mask >> s & 1);
        Digraph g = instantiate(inst.psm, fill);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) CHECK_FALSE(indistinguishable(g, a, b));
    }

    // Random fills for a two-vertex instance.
    DbpmInstance inst2 = three_color_to_dbpm(UndirectedGraph::make(2, {{0, 1}}));
    Rng rng(101);
    for (int round = 0; round < 50; ++round) {
        std::vector<bool> fill;
        for (std::size_t s = 0; s < inst2.psm.star_count(); ++s) fill.push_back(rng.chance(1, 2));
        Digraph g = instantiate(inst2.psm, fill);
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) CHECK_FALSE(indistinguishable(g, a, b));
    }
}

TEST_CASE("dbpm reduction: a small positive instance goes through the full miner") {
    // Path on two vertices: 3-colorable, so the optimum equals the budget.
    UndirectedGraph p2 = UndirectedGraph::make(2, {{0, 1}});
    DbpmInstance inst = three_color_to_dbpm(p2);
    MineResult res =
        mine(inst.psm, parse_encoding_name("BE+NF+MD+LI"), inst.m, SolverSpec{}, 60.0);
    REQUIRE(res.status == SolveResult::Status::Optimal);
    CHECK(res.domain_count == inst.m);
}

TEST_CASE("db reduction: single-vertex shape") {
    DbpmInstance inst = three_color_to_db(UndirectedGraph::make(1, {}));
    CHECK(inst.m == 3);
    CHECK(inst.psm.entity_count() == 4);
    CHECK(inst.psm.right_count() == 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(inst.psm.at(i, 0, j) == (i == j ? Cell::One : Cell::Zero));
    CHECK(inst.psm.at(3, 0, 3) == Cell::One);
    CHECK(inst.psm.at(0, 0, 3) == Cell::Star);
    CHECK(inst.psm.at(3, 0, 0) == Cell::Star);
}

TEST_CASE("db reduction: K3 positive, K4 negative at budget 3") {
    DbpmInstance k3 = three_color_to_db(UndirectedGraph::complete(3));
    CHECK(db_feasible(k3.psm, k3.m));
    DbpmInstance k4 = three_color_to_db(UndirectedGraph::complete(4));
    CHECK_FALSE(db_feasible(k4.psm, k4.m));
}

TEST_CASE("both reductions track 3-colorability on all graphs up to 3 vertices") {
    for (int n = 1; n <= 3; ++n)
        for (const UndirectedGraph& h : all_graphs(n)) {
            bool colorable = is_three_colorable(h);
            DbpmInstance a = three_color_to_dbpm(h);
            CHECK(dbpm_feasible(a.psm, a.m) == colorable);
            DbpmInstance b = three_color_to_db(h);
            CHECK(db_feasible(b.psm, b.m) == colorable);
        }
}

TEST_CASE("feasibility searches agree with the enumeration oracle") {
    Rng rng(103);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + rng.below_int(4);
        int k = 1 + rng.below_int(2);
        PartialMatrix psm = testutil::random_psm(n, k, rng.below(6), rng);
        int dbpm_best = oracle::dbpm_optimum(psm);
        int db_best = oracle::db_optimum(psm);
        for (int m = 1; m <= n; ++m) {
            CHECK(dbpm_feasible(psm, m) == (dbpm_best <= m));
            CHECK(db_feasible(psm, m) == (db_best <= m));
        }
    }
}

TEST_CASE("dtepm transformation: fixed block at n=1") {
    PartialMatrix psm(1, 1, Cell::Star);
    DbpmInstance inst = db_to_dtepm(2, psm);
    CHECK(inst.m == 2 + 3);
    REQUIRE(inst.psm.entity_count() == 4);
    int expected[3][3] = {{1, 0, 1}, {0, 1, 0}, {1, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(inst.psm.at(1 + i, 0, 1 + j) == (expected[i][j] ? Cell::One : Cell::Zero));
    // Off-diagonal blocks are denials; the original cell is preserved.
    CHECK(inst.psm.at(0, 0, 1) == Cell::Zero);
    CHECK(inst.psm.at(1, 0, 0) == Cell::Zero);
    CHECK(inst.psm.at(0, 0, 0) == Cell::Star);
    CHECK_THROWS_AS(db_to_dtepm(1, PartialMatrix(2, 2, Cell::Zero)), ArityError);
}

TEST_CASE("dtepm transformation: row/column class arithmetic on complete matrices") {
    Rng rng(107);
    for (int round = 0; round < 25; ++round) {
        int n = 1 + rng.below_int(6);
        Digraph m = testutil::random_digraph(n, 1, rng, 100 + rng.below(800));
        PartialMatrix psm = PartialMatrix::from_digraph(m);
        DbpmInstance inst = db_to_dtepm(1, psm);
        Digraph big = inst.psm.to_digraph();
        ClassCounts before = counts(m);
        ClassCounts after = counts(big);
        CHECK(after.rows == before.rows + 2 * n + 1);
        CHECK(after.cols == before.cols + n + 1);
        CHECK(std::max(after.rows, after.cols) == after.rows);
    }
}

TEST_CASE("dtepm transformation preserves the decision across the budget shift") {
    Rng rng(109);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + rng.below_int(2);
        PartialMatrix psm = testutil::random_psm(n, 1, rng.below(5), rng);
        DbpmInstance inst = db_to_dtepm(1, psm);
        CHECK(oracle::dtepm_optimum(inst.psm) == oracle::db_optimum(psm) + 2 * n + 1);
    }
}
