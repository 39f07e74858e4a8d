#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "graphenum/families.hpp"
#include "graphenum/numbers.hpp"

namespace graphenum::oracle {

// Simple labelled graph on up to 8 vertices. Edges live in a bitmask over
// the 28 vertex pairs (i, j), i < j, in lexicographic order.
struct SmallGraph {
    int n = 0;
    std::uint32_t edges = 0;

    static int pair_index(int i, int j);
    bool has_edge(int i, int j) const;
    SmallGraph& add_edge(int i, int j);
    int edge_count() const;
    // adjacency bitmask per vertex
    std::array<std::uint8_t, 8> adjacency() const;

    static SmallGraph complete(int n);
    // K_{a,b}: first a vertices on one side
    static SmallGraph complete_bipartite(int a, int b);
};

int component_count(const SmallGraph& g);
bool is_connected(const SmallGraph& g);
// n = 2 with an edge counts as 2-connected; a single vertex does not.
bool is_biconnected(const SmallGraph& g);

// Two independent K4-minor tests. The reduction algorithm repeatedly deletes
// degree <= 1 vertices and smooths degree-2 vertices (deduplicating the
// bypass edge); the graph has no K4 minor exactly when this empties it.
bool k4_minor_by_reduction(const SmallGraph& g);
// Explicit minor search: four disjoint connected branch sets, pairwise joined
// by an edge.
bool k4_minor_by_branch_sets(const SmallGraph& g);
// Runs both and throws on disagreement.
bool has_k4_minor(const SmallGraph& g);

// Branch-set search for K2,3: two connected sets each joined to three further
// disjoint connected sets.
bool has_k23_minor(const SmallGraph& g);

// Ground-truth counts for one family, refined by vertex count, edge count and
// number of connected components.
struct OracleTable {
    Family family = Family::SeriesParallel;
    int max_n = 0;
    // all_qk[n][q][k]; connected_q[n][q]; biconnected_q[n][q]
    std::vector<std::vector<std::vector<std::uint64_t>>> all_qk;
    std::vector<std::vector<std::uint64_t>> connected_q;
    std::vector<std::vector<std::uint64_t>> biconnected_q;

    BigInt count(Level level, int n, int q) const;  // q = -1: marginal over q
    BigInt count_components(int n, int k) const;    // all graphs with k components
    BigInt total(int n) const;                      // family members on n vertices
};

// Exhaustively classifies every labelled graph on 1..n_max vertices. The
// structure theorem for 2-connected K2,3-minor-free graphs (outerplanar or
// exactly K4) is asserted along the way. n_max = 8 must be requested
// explicitly; it enumerates 2^28 graphs.
std::map<Family, OracleTable> classify_and_count(int n_max,
                                                 const std::vector<Family>& families = {
                                                     Family::SeriesParallel, Family::Outerplanar,
                                                     Family::K23MinorFree},
                                                 int threads = 1, bool allow_n8 = false);

// Fraction of graphs where both K4 algorithms were compared: full sweep for
// n <= max_full, `samples` pseudo-random graphs at n = 7. Throws on any
// disagreement.
void check_k4_agreement(int max_full, int samples_at_7, std::uint64_t seed = 12345);

}  // namespace graphenum::oracle
