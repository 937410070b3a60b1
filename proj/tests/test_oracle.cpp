#include <doctest.h>

#include "domainminer/oracle.hpp"
#include "domainminer/reductions.hpp"
#include "domainminer/summary.hpp"
#include "test_util.hpp"

using namespace domainminer;

TEST_CASE("dbpm optimum: star-free matrices reduce to summarization") {
    Rng rng(3);
    for (int round = 0; round < 20; ++round) {
        int n = 1 + rng.below_int(8);
        int k = 1 + rng.below_int(2);
        Digraph g = testutil::random_digraph(n, k, rng, 100 + rng.below(800));
        PartialMatrix psm = PartialMatrix::from_digraph(g);
        CHECK(oracle::dbpm_optimum(psm) == summarize(g).partition.class_count());
    }
}

TEST_CASE("dbpm optimum: uniform fill collapses an all-star matrix") {
    PartialMatrix psm(2, 1, Cell::Star);
    CHECK(oracle::dbpm_optimum(psm) == 1);
}

TEST_CASE("oracle refuses oversized instances") {
    DbpmInstance k3 = three_color_to_dbpm(UndirectedGraph::complete(3));
    CHECK_THROWS_AS(oracle::dbpm_optimum(k3.psm), SizeLimitError);
    PartialMatrix wide(13, 1, Cell::Zero);
    CHECK_THROWS_AS(oracle::dbpm_optimum(wide), SizeLimitError);
}

TEST_CASE("dbpm optimum matches a summarize-over-fills sweep") {
    // Independent route: materialize every fill and summarize it through the
    // library path, then compare minima.
    Rng rng(5);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + rng.below_int(4);
        PartialMatrix psm = testutil::random_psm(n, 1, rng.below(6), rng);
        std::size_t stars = psm.star_count();
        int best = psm.entity_count();
        for (uint64_t mask = 0; mask < (uint64_t(1) << stars); ++mask) {
            std::vector<bool> fill;
            for (std::size_t s = 0; s < stars; ++s) fill.push_back(mask >> s & 1);
            best = std::min(best, summarize(instantiate(psm, fill)).partition.class_count());
        }
        CHECK(oracle::dbpm_optimum(psm) == best);
    }
}

TEST_CASE("db optimum: trivial cases") {
    Digraph g(3, 1, {{0, 0, 0}, {1, 0, 0}});
    PartialMatrix psm = PartialMatrix::from_digraph(g);
    CHECK(oracle::db_optimum(psm) == testutil::distinct_rows_by_strings(g));

    PartialMatrix all_star(2, 1, Cell::Star);
    CHECK(oracle::db_optimum(all_star) == 1);
}

TEST_CASE("dtepm optimum dominates db optimum") {
    Rng rng(7);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + rng.below_int(4);
        PartialMatrix psm = testutil::random_psm(n, 1, rng.below(6), rng);
        CHECK(oracle::dtepm_optimum(psm) >= oracle::db_optimum(psm));
    }
}

TEST_CASE("per instantiation, rows and columns never outnumber the classes") {
    Rng rng(11);
    for (int round = 0; round < 15; ++round) {
        int n = 2 + rng.below_int(5);
        PartialMatrix psm = testutil::random_psm(n, 1, rng.below(5), rng);
        std::size_t stars = psm.star_count();
        for (uint64_t mask = 0; mask < (uint64_t(1) << stars); ++mask) {
            std::vector<bool> fill;
            for (std::size_t s = 0; s < stars; ++s) fill.push_back(mask >> s & 1);
            Digraph g = instantiate(psm, fill);
            int classes = summarize(g).partition.class_count();
            CHECK(testutil::distinct_rows_by_strings(g) <= classes);
            CHECK(testutil::distinct_cols_by_strings(g) <= classes);
        }
    }
}
