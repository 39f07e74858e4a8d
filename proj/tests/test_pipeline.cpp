#include "doctest.h"
#include "graphenum/oracle.hpp"
#include "graphenum/pipeline.hpp"

using namespace graphenum;
using namespace graphenum::pipeline;

TEST_CASE("network series first coefficients") {
    Series d = network_series(12, kRefined);
    // D(0,y) = y
    CHECK(d.coeff_poly(0) == YPolynomial{{1u, Rational(1)}});
    // [x^1] D = y^2 (1 + y)
    CHECK(d.coeff_poly(1) == YPolynomial{{2u, Rational(1)}, {3u, Rational(1)}});
    // Newton and plain fixed-point iteration agree
    Series d_fp = network_series(12, kRefined, /*use_newton=*/false);
    CHECK(d == d_fp);
    // univariate and jet modes are consistent with the exact run
    Series d1 = network_series(12, kMarginal);
    for (int n = 0; n <= 12; ++n) CHECK(evaluate_y(d, Rational(1)).count_at_y1(n) == d1.count_at_y1(n));
}

TEST_CASE("series-parallel blocks") {
    Series b = blocks_sp(8, kRefined);
    CHECK(b.count(2, 1) == 1);  // the single edge
    CHECK(b.count(3, 3) == 1);  // the triangle
    CHECK(b.count(4, 4) == 3);
    CHECK(b.count(4, 5) == 6);
    CHECK(b.count(4, 6) == 0);
    BigInt b4 = 0;
    for (int q = 0; q <= b.ydegree(4); ++q) b4 += b.count(4, static_cast<unsigned>(q));
    CHECK(b4 == 9);
    // 2-tree identity instance: b_{4,5} = C(4,2) * 5^0
    CHECK(b.count(4, 5) == binomial(4, 2));
}

TEST_CASE("dissection series") {
    Series a = dissection_series(9, kRefined);
    CHECK(a.coeff_poly(3) == YPolynomial{{3u, Rational(1)}});
    CHECK(a.coeff_poly(4) == YPolynomial{{4u, Rational(1)}, {5u, Rational(2)}});
    // marginals are the little Schroeder numbers
    const long expected[] = {1, 3, 11, 45, 197};
    for (int n = 3; n <= 7; ++n) {
        Rational total(0);
        for (const auto& [q, v] : a.coeff_poly(n)) total += v;
        CHECK(total == Rational(expected[n - 3]));
    }
}

TEST_CASE("outerplanar and K2,3-minor-free blocks") {
    Series bo = blocks_outerplanar(7, kRefined);
    CHECK(bo.count(2, 1) == 1);
    BigInt b4 = 0, b5 = 0;
    for (int q = 0; q <= bo.ydegree(4); ++q) b4 += bo.count(4, static_cast<unsigned>(q));
    for (int q = 0; q <= bo.ydegree(5); ++q) b5 += bo.count(5, static_cast<unsigned>(q));
    CHECK(b4 == 9);
    CHECK(b5 == 132);

    Series bk = blocks_k23(7, kRefined);
    CHECK(bk.count(4, 6) == 1);
    for (int n = 2; n <= 7; ++n) {
        int deg = std::max(bo.ydegree(n), bk.ydegree(n));
        for (int q = 0; q <= deg; ++q) {
            if (n == 4 && q == 6) continue;
            CHECK(bo.count(n, static_cast<unsigned>(q)) == bk.count(n, static_cast<unsigned>(q)));
        }
    }
}

TEST_CASE("rooted connected and connected series") {
    for (Family f : {Family::SeriesParallel, Family::Outerplanar, Family::K23MinorFree}) {
        FamilySeries fam = build_family(f, 7, kRefined);
        CHECK(fam.rooted.coeff(1, 0) == Rational(1));
        CHECK(fam.rooted.count(2, 1) == 2);  // two rooted copies of the single edge
        CHECK(fam.connected.count_at_y1(1) == 1);
        CHECK(fam.connected.count_at_y1(2) == 1);
        CHECK(fam.connected.count_at_y1(3) == 4);
        CHECK(fam.all.count_at_y1(1) == 1);
        CHECK(fam.all.count_at_y1(2) == 2);
        CHECK(fam.all.count_at_y1(3) == 8);
    }
    FamilySeries sp = build_family(Family::SeriesParallel, 7, kRefined);
    CHECK(sp.connected.count_at_y1(4) == 37);  // all connected 4-vertex graphs except K4
    CHECK(sp.all.count_at_y1(4) == 63);
    FamilySeries k23 = build_family(Family::K23MinorFree, 6, kRefined);
    CHECK(k23.all.count_at_y1(4) == 64);

    // Newton solve equals the baseline fixed-point iteration
    Series bp = block_derivative(Family::SeriesParallel, 25, kMarginal);
    CHECK(rooted_connected_from(bp, 25, true) == rooted_connected_from(bp, 25, false));
}

TEST_CASE("composition identity for the connected series") {
    // B(F) must equal C - F(1 - log(F/x)) with C independently computed by
    // integrating F/x.
    FamilySeries fam = build_family(Family::SeriesParallel, 6, kMarginal);
    Series c_int = integrate_x(shift_down_x(fam.rooted));
    Series lg = log_series(shift_down_x(fam.rooted));
    Series rhs = c_int - fam.rooted + mul_to_order(fam.rooted, lg, 6);
    CHECK(compose(fam.blocks, fam.rooted) == rhs);
}

TEST_CASE("count tables against the oracle up to n = 6") {
    auto oracle_tables = oracle::classify_and_count(6);
    for (Family f : {Family::SeriesParallel, Family::Outerplanar, Family::K23MinorFree}) {
        FamilySeries fam = build_family(f, 6, kRefined);
        const auto& ot = oracle_tables.at(f);
        for (Level l : {Level::All, Level::Connected, Level::Biconnected}) {
            CountTable t = counts_from(fam, l, true);
            for (int n = 1; n <= 6; ++n) {
                CHECK(t.marginal_at(n) == ot.count(l, n, -1));
                int qmax = n * (n - 1) / 2;
                for (int q = 0; q <= qmax; ++q) CHECK(t.at(n, q) == ot.count(l, n, q));
            }
        }
    }
}

TEST_CASE("component refinement sums to the total") {
    FamilySeries fam = build_family(Family::SeriesParallel, 8, kMarginal);
    auto oracle_tables = oracle::classify_and_count(5);
    const auto& ot = oracle_tables.at(Family::SeriesParallel);
    for (int n = 1; n <= 8; ++n) {
        BigInt sum = 0;
        for (int k = 1; k <= n; ++k) {
            Series ck = components_series(fam.connected, k);
            BigInt cnt = ck.count_at_y1(n);
            sum += cnt;
            if (n <= 5) CHECK(cnt == ot.count_components(n, k));
        }
        CHECK(sum == fam.all.count_at_y1(n));
    }
}

TEST_CASE("moment jets agree with the refined tables") {
    FamilySeries exact = build_family(Family::Outerplanar, 8, kRefined);
    FamilySeries jets = build_family(Family::Outerplanar, 8, kMomentJet);
    for (int n = 1; n <= 8; ++n) {
        Rational m0(0), m1(0), m2(0);
        for (const auto& [q, v] : exact.all.coeff_poly(n)) {
            m0 += v;
            m1 += v * Rational(static_cast<long>(q));
            m2 += v * Rational(static_cast<long>(q)) * Rational(static_cast<long>(q) - 1);
        }
        CHECK(jets.all.coeff(n, 0) == m0);
        CHECK(jets.all.coeff(n, 1) == m1);
        CHECK(jets.all.coeff(n, 2) == m2 / 2);
    }
}
