#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "graphenum/families.hpp"
#include "graphenum/series.hpp"

namespace graphenum::pipeline {

// Coefficient modes for a pipeline run (see Series): exact polynomials in y
// for refined tables, y = 1 for plain counts, second-order y-jets around 1
// for exact moment extraction.
inline constexpr int kRefined = Series::kExactY;
inline constexpr int kMarginal = 0;
inline constexpr int kMomentJet = 2;

// EGF of two-pole networks: the unique D with D(0,y) = y and
// log((1+D)/(1+y)) = x D^2 / (1 + x D). Newton iteration by default; the
// plain fixed-point iteration of D <- (1+y) exp(x D^2/(1+xD)) - 1 is kept as
// a baseline behind the same contract.
Series network_series(int order, int ycap, bool use_newton = true);

// EGF of 2-connected graphs with no K4 minor, from the closed form
//   B = log(1+xD)/2 - xD (x^2 D^2 + xD + 2 - 2x) / (4(1+xD)),
// cross-checked in exact mode against dB/dy = (x^2/2)(1+D)/(1+y).
Series blocks_sp(int order, int ycap);

// Ordinary GF of polygon dissections, x marking vertices and y edges;
// checked term-wise against A = yx^2 + yA^2/(x-A).
Series dissection_series(int order, int ycap);

// EGF of 2-connected outerplanar graphs; coefficients satisfy
// b_{n,q} = a_{n,q} (n-1)!/2 against the dissection GF, and b_{2,1} = 1.
Series blocks_outerplanar(int order, int ycap);

// Outerplanar blocks plus the single K4 term y^6 x^4 / 4!.
Series blocks_k23(int order, int ycap);

// B'(x,y) for the family, to the given truncation order.
Series block_derivative(Family f, int order, int ycap);

// F = x C' solving F = x exp(B'(F,y)).
Series rooted_connected(Family f, int order, int ycap, bool use_newton = true);
Series rooted_connected_from(const Series& block_deriv, int order, bool use_newton = true);

// C = F (1 - log(F/x)) + B(F,y); aborts unless x C' = F term-wise.
Series connected_from(const Series& rooted, const Series& blocks);

// G = exp(C).
Series all_graphs_from(const Series& connected);

// Everything a family needs, built once per (family, order, mode).
struct FamilySeries {
    Family family;
    int order = 0;
    int ycap = kRefined;
    Series blocks;        // B
    Series block_deriv;   // B'
    Series rooted;        // F
    Series connected;     // C
    Series all;           // G
    std::optional<Series> network;     // D, series-parallel only
    std::optional<Series> dissection;  // A, outerplanar / K2,3-minor-free only
};

FamilySeries build_family(Family f, int order, int ycap);

// Exact labelled counts for one family and connectivity level.
struct CountTable {
    Family family = Family::SeriesParallel;
    Level level = Level::All;
    bool refined = false;
    int max_n = 0;
    // refined: rows[n] lists (q, count) with count > 0, ascending in q
    std::vector<std::vector<std::pair<int, BigInt>>> rows;
    std::vector<BigInt> marginal;  // index n; present in both shapes

    BigInt at(int n, int q) const;
    const BigInt& marginal_at(int n) const;
};

CountTable counts(Family f, Level l, int max_n, bool refined);
CountTable counts_from(const FamilySeries& fam, Level l, bool refined);

// C(x)^k / k!: EGF of graphs in the family with exactly k components.
Series components_series(const Series& connected, int k);

}  // namespace graphenum::pipeline
