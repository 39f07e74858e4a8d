#include "doctest.h"
#include "graphenum/oracle.hpp"

using namespace graphenum;
using namespace graphenum::oracle;

TEST_CASE("minor tests on fixed graphs") {
    SmallGraph k4 = SmallGraph::complete(4);
    CHECK(has_k4_minor(k4));
    CHECK_FALSE(has_k23_minor(k4));

    SmallGraph k23 = SmallGraph::complete_bipartite(2, 3);
    CHECK_FALSE(has_k4_minor(k23));
    CHECK(has_k23_minor(k23));

    for (int n = 1; n <= 3; ++n) {
        std::uint64_t nmasks = 1ull << (n * (n - 1) / 2);
        for (std::uint64_t m = 0; m < nmasks; ++m)
            CHECK_FALSE(has_k4_minor(SmallGraph{n, static_cast<std::uint32_t>(m)}));
    }

    // diamond: C4 plus one chord
    SmallGraph diamond{4, 0};
    diamond.add_edge(0, 1).add_edge(1, 2).add_edge(2, 3).add_edge(3, 0).add_edge(0, 2);
    CHECK_FALSE(has_k23_minor(diamond));
    CHECK_FALSE(has_k4_minor(diamond));

    // K5 and larger hosts
    CHECK(has_k4_minor(SmallGraph::complete(5)));
    CHECK(has_k23_minor(SmallGraph::complete(5)));

    // subdividing one edge of K4 creates a K2,3 minor
    SmallGraph subdiv{5, 0};
    subdiv.add_edge(0, 1).add_edge(0, 2).add_edge(1, 2);
    subdiv.add_edge(0, 4).add_edge(4, 3);  // edge 0-3 subdivided through 4
    subdiv.add_edge(1, 3).add_edge(2, 3);
    CHECK(has_k4_minor(subdiv));
    CHECK(has_k23_minor(subdiv));
}

TEST_CASE("connectivity helpers") {
    SmallGraph path{3, 0};
    path.add_edge(0, 1).add_edge(1, 2);
    CHECK(is_connected(path));
    CHECK_FALSE(is_biconnected(path));  // middle vertex is a cut vertex
    CHECK(component_count(path) == 1);

    SmallGraph tri = SmallGraph::complete(3);
    CHECK(is_biconnected(tri));

    SmallGraph edge{2, 0};
    edge.add_edge(0, 1);
    CHECK(is_biconnected(edge));
    CHECK_FALSE(is_biconnected(SmallGraph{1, 0}));

    SmallGraph two_parts{4, 0};
    two_parts.add_edge(0, 1).add_edge(2, 3);
    CHECK(component_count(two_parts) == 2);
}

TEST_CASE("classification counts at small n") {
    auto tables = classify_and_count(5);
    const OracleTable& sp = tables.at(Family::SeriesParallel);
    const OracleTable& outer = tables.at(Family::Outerplanar);
    const OracleTable& k23f = tables.at(Family::K23MinorFree);

    // n = 3: every family sees all 8 graphs, 4 of them connected
    for (const OracleTable* t : {&sp, &outer, &k23f}) {
        CHECK(t->total(3) == 8);
        CHECK(t->count(Level::Connected, 3, -1) == 4);
        CHECK(t->count(Level::Biconnected, 3, -1) == 1);
    }

    // n = 4: all graphs except K4 are series-parallel / outerplanar
    CHECK(sp.total(4) == 63);
    CHECK(outer.total(4) == 63);
    CHECK(k23f.total(4) == 64);
    CHECK(sp.count(Level::Biconnected, 4, -1) == 9);
    CHECK(outer.count(Level::Biconnected, 4, -1) == 9);
    CHECK(k23f.count(Level::Biconnected, 4, -1) == 10);
    CHECK(sp.count(Level::Connected, 4, -1) == 37);

    // refined biconnected SP: three 4-cycles and six diamonds
    CHECK(sp.count(Level::Biconnected, 4, 4) == 3);
    CHECK(sp.count(Level::Biconnected, 4, 5) == 6);
    CHECK(sp.count(Level::Biconnected, 4, 6) == 0);
    CHECK(k23f.count(Level::Biconnected, 4, 6) == 1);

    // n = 5: K2,3 and its SP supergraphs separate the families
    CHECK(sp.total(5) > outer.total(5));
    CHECK(outer.count(Level::Biconnected, 5, -1) == 132);

    // component refinement sums to the family total
    BigInt sum = 0;
    for (int k = 1; k <= 5; ++k) sum += sp.count_components(5, k);
    CHECK(sum == sp.total(5));
}

TEST_CASE("k4 algorithms agree on a full sweep up to n=5") {
    CHECK_NOTHROW(check_k4_agreement(5, 20000));
}

TEST_CASE("large run needs the explicit flag") {
    CHECK_THROWS(classify_and_count(8));
    CHECK_THROWS(classify_and_count(9, {Family::SeriesParallel}, 1, true));
}
