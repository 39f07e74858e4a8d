#pragma once

#include <string>
#include <vector>

#include "graphenum/bigfloat.hpp"
#include "graphenum/oracle.hpp"
#include "graphenum/pipeline.hpp"

namespace graphenum::verifier {

// Exact comparison of a pipeline count table against the brute-force oracle.
struct OracleDiff {
    int n = 0;
    int q = 0;  // -1 for a marginal mismatch
    BigInt pipeline_count, oracle_count;
};
struct OracleCheck {
    Family family;
    Level level;
    bool pass = false;
    std::vector<OracleDiff> diffs;
};
OracleCheck verify_oracle(const pipeline::CountTable& table, const oracle::OracleTable& truth,
                          int n_max);

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::vector<std::string> failures;
};
// b_{n, 2n-3} = C(n,2) (2n-3)^{n-4} for 4 <= n <= n_max (edge-maximal blocks
// are exactly the 2-trees).
IdentityCheck verify_two_tree_identity(const pipeline::CountTable& sp_biconnected, int n_max);
// b_{n,q} = a_{n,q} (n-1)!/2 for n >= 3, against an independently built
// dissection GF; marginals reproduce the little Schroeder numbers.
IdentityCheck verify_dissection_bijection(const pipeline::CountTable& outer_biconnected,
                                          const Series& dissection, int n_max);

// ratio r_n = (count_n / n!) n^{5/2} rho^n / amplitude; tends to 1
struct RatioRow {
    int n;
    BigFloat ratio;
};
struct ConvergenceReport {
    Family family;
    Level level;
    BigFloat rho, amplitude;
    std::vector<RatioRow> rows;
};
ConvergenceReport asymptotic_handshake(Family f, Level l, const Series& marginal_series,
                                       const BigFloat& rho, const BigFloat& amplitude,
                                       const std::vector<int>& ns, mpfr_prec_t prec);

// Exact edge-count moments at a fixed n, from a y-jet pipeline (cap 2) or a
// refined table.
struct MomentRow {
    int n = 0;
    Rational mu, sigma2;
};
MomentRow edge_moments_from_jets(const Series& jet_series, int n);
MomentRow edge_moments_from_table(const pipeline::CountTable& refined, int n);

// n! [x^n] C^k / k! for k = 1..k_max, computed incrementally.
std::vector<BigInt> component_counts(const Series& connected, int n, int k_max);

struct ComponentDistribution {
    Family family = Family::SeriesParallel;
    int n = 0;
    std::vector<Rational> probs;  // P_n(k), k = 1..K
    Rational tail;                // exact remaining mass beyond K
    BigFloat p1;
    BigFloat tv_distance;  // against the shifted Poisson law 1 + P(param)
};
// K grows until the exact tail drops below 10^-12 (at least ceil(log n)+10).
// When full_sum is set the whole range k <= n is accumulated and checked to
// add up to the family total exactly.
ComponentDistribution component_distribution(Family f, const Series& connected, const Series& all,
                                             int n, const BigFloat& param, mpfr_prec_t prec,
                                             bool full_sum = false);

}  // namespace graphenum::verifier
