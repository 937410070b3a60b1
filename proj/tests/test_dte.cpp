#include <doctest.h>

#include <chrono>

#include "domainminer/dte.hpp"
#include "domainminer/reductions.hpp"
#include "domainminer/summary.hpp"
#include "test_util.hpp"

using namespace domainminer;

TEST_CASE("row/col equivalence: reflexivity and a single differing cell") {
    Rng rng(3);
    Digraph m = testutil::random_digraph(6, 2, rng);
    for (int u = 0; u < 6; ++u) {
        CHECK(row_equivalent(m, u, u));
        CHECK(col_equivalent(m, u, u));
    }

    // Rows 0 and 1 identical except one cell.
    Digraph m2(3, 1, {{0, 0, 2}, {1, 0, 2}, {0, 0, 0}});
    CHECK_FALSE(row_equivalent(m2, 0, 1));
}

TEST_CASE("row and column equivalence together are indistinguishability") {
    Rng rng(5);
    for (int round = 0; round < 30; ++round) {
        int n = 2 + rng.below_int(19);
        Digraph m = testutil::random_digraph(n, 1, rng, 150 + rng.below(200));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                CHECK((row_equivalent(m, u, v) && col_equivalent(m, u, v)) ==
                      indistinguishable(m, u, v));
    }
}

TEST_CASE("counts: edgeless matrix has one class of everything") {
    Digraph m(5, 2, {});
    ClassCounts c = counts(m);
    CHECK(c.rows == 1);
    CHECK(c.cols == 1);
    CHECK(c.combined == 1);
}

TEST_CASE("counts: the fixed block of the dtepm transformation") {
    // The block for source size n has 2n+1 distinct rows and n+1 distinct
    // columns; verified against a string-set dedup.
    for (int n = 1; n <= 6; ++n) {
        PartialMatrix empty(n, 1, Cell::Zero);
        DbpmInstance inst = db_to_dtepm(1, empty);
        int big = 2 * n + 1;
        std::vector<Triple> edges;
        for (int i = 0; i < big; ++i)
            for (int j = 0; j < big; ++j)
                if (inst.psm.at(n + i, 0, n + j) == Cell::One) edges.push_back(Triple{i, 0, j});
        Digraph mstar(big, 1, edges);
        ClassCounts c = counts(mstar);
        CHECK(c.rows == 2 * n + 1);
        CHECK(c.cols == n + 1);
        CHECK(testutil::distinct_rows_by_strings(mstar) == 2 * n + 1);
        CHECK(testutil::distinct_cols_by_strings(mstar) == n + 1);
    }
}

TEST_CASE("counts: rows and columns never exceed the combined class count") {
    Rng rng(7);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + rng.below_int(10);
        int k = 1 + rng.below_int(2);
        Digraph m = testutil::random_digraph(n, k, rng, 100 + rng.below(800));
        ClassCounts c = counts(m);
        CHECK(c.rows <= c.combined);
        CHECK(c.cols <= c.combined);
    }
}

TEST_CASE("mine_dte: degenerate matrices") {
    Digraph empty(4, 1, {});
    DtePolicy p = mine_dte(empty);
    CHECK(p.domain_count == 1);
    CHECK(p.type_count == 1);
    CHECK_FALSE(p.tbl_at(0, 0, 0));
    CHECK(dte_enforces(p, empty));

    std::vector<Triple> all;
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) all.push_back(Triple{u, 0, v});
    Digraph complete(3, 1, all);
    DtePolicy q = mine_dte(complete);
    CHECK(q.domain_count == 1);
    CHECK(q.type_count == 1);
    CHECK(q.tbl_at(0, 0, 0));
    CHECK(dte_enforces(q, complete));
}

TEST_CASE("mine_dte matches the sort-and-dedup oracle and enforces") {
    Rng rng(11);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + rng.below_int(10);
        Digraph m = testutil::random_digraph(n, 1, rng, 100 + rng.below(800));
        DtePolicy p = mine_dte(m);
        CHECK(p.domain_count == testutil::distinct_rows_by_strings(m));
        CHECK(p.type_count == testutil::distinct_cols_by_strings(m));
        CHECK(dte_enforces(p, m));
    }
}

TEST_CASE("dte_enforces: a flipped cube bit breaks enforcement") {
    Rng rng(13);
    Digraph m = testutil::random_digraph(6, 1, rng);
    DtePolicy p = mine_dte(m);
    p.tbl[0] ^= 1;
    CHECK_FALSE(dte_enforces(p, m));
}

TEST_CASE("dte_enforces: trivial 1x1") {
    Digraph m(1, 1, {{0, 0, 0}});
    CHECK(dte_enforces(mine_dte(m), m));
}

TEST_CASE("mine_dte is idempotent through reconstruction") {
    Rng rng(17);
    for (int round = 0; round < 15; ++round) {
        int n = 2 + rng.below_int(8);
        Digraph m = testutil::random_digraph(n, 1, rng);
        DtePolicy p = mine_dte(m);
        std::vector<Triple> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (p.tbl_at(p.delta[u], 0, p.tau[v])) edges.push_back(Triple{u, 0, v});
        DtePolicy q = mine_dte(Digraph(n, 1, edges));
        CHECK(q.domain_count == p.domain_count);
        CHECK(q.type_count == p.type_count);
    }
}

TEST_CASE("row test cost grows about linearly in n") {
    // Smoke check only: doubling n must not blow the per-pair cost up by
    // anything near quadratic.
    auto time_pairs = [](int n) {
        Rng rng(19);
        Digraph m = testutil::random_digraph(n, 1, rng);
        auto t0 = std::chrono::steady_clock::now();
        volatile bool sink = false;
        for (int rep = 0; rep < 2000; ++rep)
            sink = sink ^ row_equivalent(m, rep % n, (rep * 7 + 1) % n);
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    double small = time_pairs(64);
    double large = time_pairs(128);
    CHECK(large < 50 * small + 1e-3);
}
