#include "graphenum/pipeline.hpp"

#include <algorithm>

namespace graphenum::pipeline {

namespace {

// (1 + y) as a coefficient-ring polynomial in the mode's y slot basis.
std::vector<long> one_plus_y_poly(int ycap) {
    if (ycap == Series::kExactY) return {1, 1};
    if (ycap == 0) return {2};
    return {2, 1};  // y = 1 + eps
}

Series one_plus_y_series(int order, int ycap) {
    return Series::constant(order, ycap, Rational(1)) + Series::edge_marker(order, ycap);
}

int family_ydeg_bound(int n) { return std::max(0, 2 * n - 3); }

// K4 blocks push the K2,3-minor-free family above the 2n-3 edge bound: a
// chain of j K4 blocks glued at cut vertices has n = 3j+1 vertices and 6j
// edges. Maximizing edges over block trees gives 2n-2 when n = 1 mod 3.
int k23_ydeg_bound(int n) {
    if (n >= 4 && n % 3 == 1) return 2 * n - 2;
    return std::max(0, 2 * n - 3);
}

// Solves log E = x W^2/(1+xW) with W = (1+y)E - 1 by x-adic Newton. The
// change of variable E = (1+D)/(1+y) keeps every iterate inside the
// polynomial coefficient ring.
Series network_core_newton(int order, int ycap) {
    const Series ypoly = one_plus_y_series(order, ycap);
    auto embed = [&](const Series& s, int m) {
        Series w(m, s.ycap());
        for (int n = 0; n <= std::min(m, s.order()); ++n) w.set_coeff_poly(n, s.coeff_poly(n));
        return w;
    };
    Series e = Series::constant(0, ycap, Rational(1));
    int m = 0;
    while (m < order) {
        int m2 = std::min(order, 2 * m + 1);
        Series ew = embed(e, m2);
        Series w = mul_to_order(ypoly, ew, m2) - Series::constant(m2, ycap, Rational(1));
        Series xw = shift_up_x(w).truncated(m2);
        Series inv1xw = inverse_to_order(Series::constant(m2, ycap, Rational(1)) + xw, m2);
        Series rhs = mul_to_order(shift_up_x(w * w).truncated(m2), inv1xw, m2);
        Series phi = log_series(ew) - rhs;
        // phi'(E) = 1/E - x (1+y) W (2 + xW) / (1+xW)^2
        Series dphi = inverse_to_order(ew, m2) -
                      mul_to_order(mul_to_order(mul_to_order(shift_up_x(ypoly).truncated(m2), w, m2),
                                                Series::constant(m2, ycap, Rational(2)) + xw, m2),
                                   mul_to_order(inv1xw, inv1xw, m2), m2);
        e = ew - mul_to_order(phi, inverse_to_order(dphi, m2), m2);
        m = m2;
    }
    return e;
}

void check_network_equation(const Series& d, int ycap) {
    const int order = d.order();
    Series one = Series::constant(order, ycap, Rational(1));
    Series e = divide_by_ypoly(one + d, one_plus_y_poly(ycap));
    Series xd = shift_up_x(d).truncated(order);
    Series rhs = mul_to_order(shift_up_x(d * d).truncated(order), inverse_to_order(one + xd, order), order);
    if (log_series(e) != rhs) throw SeriesError("network series does not satisfy its defining equation");
}

}  // namespace

Series network_series(int order, int ycap, bool use_newton) {
    Series d(order, ycap);
    if (use_newton) {
        Series e = network_core_newton(order, ycap);
        d = mul_to_order(one_plus_y_series(order, ycap), e, order) -
            Series::constant(order, ycap, Rational(1));
    } else {
        Series seed = Series::edge_marker(order, ycap);
        Series one = Series::constant(order, ycap, Rational(1));
        Series ypoly = one_plus_y_series(order, ycap);
        auto update = [&](const Series& s) {
            Series xs = shift_up_x(s).truncated(order);
            Series arg = mul_to_order(shift_up_x(s * s).truncated(order),
                                      inverse_to_order(one + xs, order), order);
            return mul_to_order(ypoly, exp_series(arg), order) - one;
        };
        d = solve_fixed_point(update, seed, order);
    }
    check_network_equation(d, ycap);
    if (ycap == Series::kExactY) d.assert_ydegree([](int n) { return 2 * n + 1; }, "network series");
    return d;
}

namespace {

Series blocks_sp_from_network(const Series& d) {
    const int order = d.order();
    const int ycap = d.ycap();
    Series one = Series::constant(order, ycap, Rational(1));
    Series xd = shift_up_x(d).truncated(order);
    Series inv1xd = inverse_to_order(one + xd, order);
    Series x = Series::identity_x(order, ycap);
    // x^2 D^2 + x D + 2 - 2x
    Series inner = mul_to_order(xd, xd, order) + xd + Series::constant(order, ycap, Rational(2)) -
                   x * Rational(2);
    Series tail = mul_to_order(mul_to_order(xd, inner, order), inv1xd, order) * make_rational(1, 4);
    Series b = log_series(one + xd) * make_rational(1, 2) - tail;
    if (ycap == Series::kExactY) {
        // independent route: dB/dy = (x^2/2) (1+D)/(1+y)
        Series e = divide_by_ypoly(one + d, one_plus_y_poly(ycap));
        Series x2 = mul_to_order(x, x, order) * make_rational(1, 2);
        Series rhs = mul_to_order(x2, e, order);
        if (derive_y(b) != rhs) throw SeriesError("block series fails the dB/dy cross-check");
        b.assert_ydegree(family_ydeg_bound, "sp blocks");
    }
    return b;
}

}  // namespace

Series blocks_sp(int order, int ycap) {
    return blocks_sp_from_network(network_series(order, ycap));
}

namespace {

Series dissection_radicand(int order, int ycap) {
    Series y = Series::edge_marker(order, ycap);
    Series y2 = y * y;
    Series x = Series::identity_x(order, ycap);
    Series x2 = x * x;
    return Series::constant(order, ycap, Rational(1)) - mul_to_order(x, y, order) * Rational(2) -
           mul_to_order(x, y2, order) * Rational(4) + mul_to_order(x2, y2, order);
}

}  // namespace

Series dissection_series(int order, int ycap) {
    Series y = Series::edge_marker(order, ycap);
    Series one = Series::constant(order, ycap, Rational(1));
    Series x = Series::identity_x(order, ycap);
    Series w = sqrt_series(dissection_radicand(order, ycap));
    Series num = shift_up_x(one + mul_to_order(x, y, order) - w).truncated(order);
    Series a = divide_by_ypoly(num, one_plus_y_poly(ycap)) * make_rational(1, 2);

    // defining equation: A = y x^2 + y A^2/(x - A)
    Series a2_over_x = shift_down_x(a * a);
    Series a_over_x = shift_down_x(a);
    Series geom = inverse_to_order(Series::constant(order - 1, ycap, Rational(1)) - a_over_x, order - 1);
    Series yx2(order - 1, ycap);
    if (order - 1 >= 2) yx2 = mul_to_order(mul_to_order(x, x, order - 1), y, order - 1);
    Series rhs = yx2 + mul_to_order(mul_to_order(y, a2_over_x, order - 1), geom, order - 1);
    if (a.truncated(order - 1) != rhs) throw SeriesError("dissection series fails its defining equation");
    if (ycap == Series::kExactY) a.assert_ydegree(family_ydeg_bound, "dissection series");
    return a;
}

namespace {

Series outer_block_derivative(int order, int ycap) {
    Series y = Series::edge_marker(order, ycap);
    Series one = Series::constant(order, ycap, Rational(1));
    Series x = Series::identity_x(order, ycap);
    Series w = sqrt_series(dissection_radicand(order, ycap));
    // (1 + x y (3 + 2y) - w) / (4 (1+y))
    Series three_plus_2y = Series::constant(order, ycap, Rational(3)) + y * Rational(2);
    Series num = one + mul_to_order(mul_to_order(x, y, order), three_plus_2y, order) - w;
    return divide_by_ypoly(num, one_plus_y_poly(ycap)) * make_rational(1, 4);
}

Series k4_monomial(int order, int ycap, int xpow, const Rational& scale) {
    Series y = Series::edge_marker(order, ycap);
    Series y2 = y * y;
    Series y6 = mul_to_order(mul_to_order(y2, y2, order), y2, order);
    Series m(order, ycap);
    if (order >= xpow) m.set_coeff(xpow, 0, scale);
    return mul_to_order(y6, m, order);
}

void check_dissection_bijection(const Series& bp, int order, int ycap) {
    // B'(x,y) = A/(2x) + xy/2 encodes b_{n,q} = a_{n,q} (n-1)!/2 plus the
    // single-edge case b_{2,1} = 1.
    Series a = dissection_series(order + 1, ycap);
    Series lhs = shift_down_x(a) * make_rational(1, 2);
    Series xy = mul_to_order(Series::identity_x(order, ycap), Series::edge_marker(order, ycap), order) *
                make_rational(1, 2);
    if (bp != lhs + xy) throw SeriesError("outerplanar blocks fail the dissection bijection");
}

}  // namespace

Series blocks_outerplanar(int order, int ycap) {
    if (order < 2) throw SeriesError("blocks require order >= 2");
    Series bp = outer_block_derivative(order, ycap);
    check_dissection_bijection(bp, order, ycap);
    Series b = integrate_x(bp.truncated(order - 1));
    if (b.count_at_y1(2) != 1) throw SeriesError("b_{2,1} != 1 for outerplanar blocks");
    if (ycap == Series::kExactY) b.assert_ydegree(family_ydeg_bound, "outerplanar blocks");
    return b;
}

Series blocks_k23(int order, int ycap) {
    Series b = blocks_outerplanar(order, ycap) + k4_monomial(order, ycap, 4, make_rational(1, 24));
    if (ycap == Series::kExactY) {
        if (order >= 4 && b.count(4, 6) != 1)
            throw SeriesError("K4 term missing from K2,3-minor-free blocks");
        b.assert_ydegree(k23_ydeg_bound, "k23-minor-free blocks");
    }
    return b;
}

Series block_derivative(Family f, int order, int ycap) {
    switch (f) {
        case Family::SeriesParallel:
            return derive_x(blocks_sp(order + 1, ycap));
        case Family::Outerplanar:
            return outer_block_derivative(order, ycap);
        case Family::K23MinorFree:
            return outer_block_derivative(order, ycap) +
                   k4_monomial(order, ycap, 3, make_rational(1, 6));
    }
    throw SeriesError("unknown family");
}

Series rooted_connected_from(const Series& block_deriv, int order, bool use_newton) {
    const int ycap = block_deriv.ycap();
    if (block_deriv.order() < order) throw SeriesError("block derivative too short for rooted solve");
    if (!use_newton) {
        auto update = [&](const Series& s) {
            Series v = compose(block_deriv.truncated(order), s);
            return shift_up_x(exp_series(v)).truncated(order);
        };
        return solve_fixed_point(update, Series::identity_x(order, ycap), order);
    }
    auto embed = [&](const Series& s, int m) {
        Series w(m, s.ycap());
        for (int n = 0; n <= std::min(m, s.order()); ++n) w.set_coeff_poly(n, s.coeff_poly(n));
        return w;
    };
    Series f = Series::identity_x(1, ycap);
    int m = 1;
    while (m < order) {
        int m2 = std::min(order, 2 * m + 1);
        Series fw = embed(f, m2);
        Series v = compose(block_deriv.truncated(m2), fw);
        Series psi_of_f = mul_to_order(fw, exp_series(-v), m2);  // Psi(F) = F e^{-B'(F)}
        Series resid = psi_of_f - Series::identity_x(m2, ycap);
        Series dpsi = mul_to_order(derive_x(psi_of_f), inverse_to_order(derive_x(fw), m2 - 1), m2 - 1);
        f = fw - mul_to_order(resid, inverse_to_order(dpsi, m2), m2);
        m = m2;
    }
    return f;
}

Series rooted_connected(Family f, int order, int ycap, bool use_newton) {
    return rooted_connected_from(block_derivative(f, order, ycap), order, use_newton);
}

Series connected_from(const Series& rooted, const Series& blocks) {
    const int order = rooted.order();
    const int ycap = rooted.ycap();
    if (blocks.order() != order) throw SeriesError("connected: block/rooted order mismatch");
    Series lg = log_series(shift_down_x(rooted));  // log(F/x), order - 1
    Series c = rooted - mul_to_order(rooted, lg, order) + compose(blocks, rooted);
    // x C' must reproduce F; this fails exactly when F does not satisfy
    // F = x exp(B'(F)), so it also certifies the rooted solve.
    if (shift_up_x(derive_x(c)) != rooted) throw SeriesError("connected series fails x C' = F");
    return c;
}

Series all_graphs_from(const Series& connected) { return exp_series(connected); }

FamilySeries build_family(Family f, int order, int ycap) {
    if (order < 2) throw SeriesError("family pipelines require order >= 2");
    FamilySeries out;
    out.family = f;
    out.order = order;
    out.ycap = ycap;
    if (f == Family::SeriesParallel) {
        Series d = network_series(order + 1, ycap);
        Series bext = blocks_sp_from_network(d);
        out.network = d.truncated(order);
        out.block_deriv = derive_x(bext);
        out.blocks = bext.truncated(order);
    } else {
        out.dissection = dissection_series(order, ycap);
        out.block_deriv = block_derivative(f, order, ycap);
        out.blocks = f == Family::Outerplanar ? blocks_outerplanar(order, ycap) : blocks_k23(order, ycap);
    }
    out.rooted = rooted_connected_from(out.block_deriv, order, true);
    out.connected = connected_from(out.rooted, out.blocks);
    out.all = all_graphs_from(out.connected);
    if (ycap == Series::kExactY) {
        auto bound = f == Family::K23MinorFree ? k23_ydeg_bound : family_ydeg_bound;
        out.connected.assert_ydegree(bound, "connected series");
        out.all.assert_ydegree(bound, "all-graph series");
    }
    return out;
}

BigInt CountTable::at(int n, int q) const {
    if (n < 1 || n > max_n) throw std::out_of_range("count table: n out of range");
    for (const auto& [qq, c] : rows[static_cast<std::size_t>(n)])
        if (qq == q) return c;
    return 0;
}

const BigInt& CountTable::marginal_at(int n) const {
    if (n < 1 || n > max_n) throw std::out_of_range("count table: n out of range");
    return marginal[static_cast<std::size_t>(n)];
}

CountTable counts_from(const FamilySeries& fam, Level l, bool refined) {
    const Series* s = nullptr;
    switch (l) {
        case Level::All: s = &fam.all; break;
        case Level::Connected: s = &fam.connected; break;
        case Level::Biconnected: s = &fam.blocks; break;
    }
    CountTable t;
    t.family = fam.family;
    t.level = l;
    t.refined = refined;
    t.max_n = fam.order;
    t.rows.resize(static_cast<std::size_t>(fam.order) + 1);
    t.marginal.assign(static_cast<std::size_t>(fam.order) + 1, BigInt(0));
    for (int n = 1; n <= fam.order; ++n) {
        if (refined) {
            if (fam.ycap != Series::kExactY)
                throw SeriesError("refined counts require an exact-y pipeline");
            BigInt sum = 0;
            int deg = s->ydegree(n);
            for (int q = 0; q <= deg; ++q) {
                BigInt c = s->count(n, static_cast<unsigned>(q));
                if (c == 0) continue;
                if (c < 0) throw SeriesError("negative count in pipeline output");
                t.rows[static_cast<std::size_t>(n)].emplace_back(q, c);
                sum += c;
            }
            t.marginal[static_cast<std::size_t>(n)] = sum;
        } else {
            BigInt c = s->count_at_y1(n);
            if (c < 0) throw SeriesError("negative count in pipeline output");
            t.marginal[static_cast<std::size_t>(n)] = c;
        }
    }
    return t;
}

CountTable counts(Family f, Level l, int max_n, bool refined) {
    FamilySeries fam = build_family(f, max_n, refined ? kRefined : kMarginal);
    return counts_from(fam, l, refined);
}

Series components_series(const Series& connected, int k) {
    if (k < 1) throw SeriesError("component count must be >= 1");
    Series p = connected;
    for (int i = 2; i <= k; ++i) p = p * connected;
    return p * make_rational(BigInt(1), factorial(static_cast<unsigned long>(k)));
}

}  // namespace graphenum::pipeline
