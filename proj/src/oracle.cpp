#include "graphenum/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <thread>

namespace graphenum::oracle {

namespace {

constexpr int kMaxN = 8;

// Colexicographic pair order: (i, j) with i < j sits at j(j-1)/2 + i, so the
// pairs inside {0..n-1} occupy exactly the first C(n,2) bit positions.
int pair_index_table[kMaxN][kMaxN];
const bool pair_table_ready = [] {
    for (int j = 0; j < kMaxN; ++j)
        for (int i = 0; i < j; ++i) {
            int idx = j * (j - 1) / 2 + i;
            pair_index_table[i][j] = idx;
            pair_index_table[j][i] = idx;
        }
    return true;
}();

inline int popcount8(std::uint8_t m) { return std::popcount(static_cast<unsigned>(m)); }

// closure of `seed` inside `universe` under adjacency
inline std::uint8_t bfs_closure(const std::array<std::uint8_t, 8>& adj, std::uint8_t seed,
                                std::uint8_t universe) {
    std::uint8_t reach = seed & universe;
    for (;;) {
        std::uint8_t next = reach;
        std::uint8_t frontier = reach;
        while (frontier) {
            int v = std::countr_zero(static_cast<unsigned>(frontier));
            frontier &= static_cast<std::uint8_t>(frontier - 1);
            next |= adj[static_cast<std::size_t>(v)] & universe;
        }
        if (next == reach) return reach;
        reach = next;
    }
}

inline bool subset_connected(const std::array<std::uint8_t, 8>& adj, std::uint8_t subset) {
    if (subset == 0) return false;
    std::uint8_t seed = static_cast<std::uint8_t>(subset & (-subset));
    return bfs_closure(adj, seed, subset) == subset;
}

inline std::uint8_t neighbor_mask(const std::array<std::uint8_t, 8>& adj, std::uint8_t subset) {
    std::uint8_t nb = 0;
    std::uint8_t m = subset;
    while (m) {
        int v = std::countr_zero(static_cast<unsigned>(m));
        m &= static_cast<std::uint8_t>(m - 1);
        nb |= adj[static_cast<std::size_t>(v)];
    }
    return static_cast<std::uint8_t>(nb & ~subset);
}

// All connected subsets, sorted by size then value, so small branch sets are
// tried first.
int connected_subsets(const std::array<std::uint8_t, 8>& adj, int n, std::uint8_t out[256]) {
    int cnt = 0;
    const int full = (1 << n) - 1;
    for (int m = 1; m <= full; ++m) {
        if (subset_connected(adj, static_cast<std::uint8_t>(m))) out[cnt++] = static_cast<std::uint8_t>(m);
    }
    std::sort(out, out + cnt, [](std::uint8_t a, std::uint8_t b) {
        int pa = popcount8(a), pb = popcount8(b);
        return pa != pb ? pa < pb : a < b;
    });
    return cnt;
}

}  // namespace

int SmallGraph::pair_index(int i, int j) {
    (void)pair_table_ready;
    return pair_index_table[i][j];
}

bool SmallGraph::has_edge(int i, int j) const { return (edges >> pair_index(i, j)) & 1u; }

SmallGraph& SmallGraph::add_edge(int i, int j) {
    edges |= 1u << pair_index(i, j);
    return *this;
}

int SmallGraph::edge_count() const { return std::popcount(edges); }

std::array<std::uint8_t, 8> SmallGraph::adjacency() const {
    std::array<std::uint8_t, 8> adj{};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (has_edge(i, j)) {
                adj[static_cast<std::size_t>(i)] |= static_cast<std::uint8_t>(1u << j);
                adj[static_cast<std::size_t>(j)] |= static_cast<std::uint8_t>(1u << i);
            }
    return adj;
}

SmallGraph SmallGraph::complete(int n) {
    SmallGraph g{n, 0};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

SmallGraph SmallGraph::complete_bipartite(int a, int b) {
    SmallGraph g{a + b, 0};
    for (int i = 0; i < a; ++i)
        for (int j = a; j < a + b; ++j) g.add_edge(i, j);
    return g;
}

int component_count(const SmallGraph& g) {
    auto adj = g.adjacency();
    std::uint8_t full = static_cast<std::uint8_t>((1 << g.n) - 1);
    std::uint8_t seen = 0;
    int comps = 0;
    for (int v = 0; v < g.n; ++v) {
        std::uint8_t bit = static_cast<std::uint8_t>(1u << v);
        if (seen & bit) continue;
        seen |= bfs_closure(adj, bit, full);
        ++comps;
    }
    return comps;
}

bool is_connected(const SmallGraph& g) { return g.n >= 1 && component_count(g) == 1; }

bool is_biconnected(const SmallGraph& g) {
    if (g.n <= 1) return false;
    if (g.n == 2) return g.edges != 0;
    auto adj = g.adjacency();
    std::uint8_t full = static_cast<std::uint8_t>((1 << g.n) - 1);
    if (bfs_closure(adj, 1, full) != full) return false;
    for (int v = 0; v < g.n; ++v) {
        std::uint8_t rest = static_cast<std::uint8_t>(full & ~(1u << v));
        std::uint8_t seed = static_cast<std::uint8_t>(rest & (-rest));
        if (bfs_closure(adj, seed, rest) != rest) return false;  // v is a cut vertex
    }
    return true;
}

bool k4_minor_by_reduction(const SmallGraph& g) {
    auto adj = g.adjacency();
    std::uint8_t active = static_cast<std::uint8_t>((1 << g.n) - 1);
    bool progress = true;
    while (progress && active) {
        progress = false;
        for (int v = 0; v < g.n; ++v) {
            std::uint8_t bit = static_cast<std::uint8_t>(1u << v);
            if (!(active & bit)) continue;
            std::uint8_t nb = static_cast<std::uint8_t>(adj[static_cast<std::size_t>(v)] & active);
            int deg = popcount8(nb);
            if (deg <= 1) {
                active &= static_cast<std::uint8_t>(~bit);
                progress = true;
            } else if (deg == 2) {
                int u = std::countr_zero(static_cast<unsigned>(nb));
                std::uint8_t nb2 = static_cast<std::uint8_t>(nb & (nb - 1));
                int w = std::countr_zero(static_cast<unsigned>(nb2));
                active &= static_cast<std::uint8_t>(~bit);
                adj[static_cast<std::size_t>(u)] |= static_cast<std::uint8_t>(1u << w);
                adj[static_cast<std::size_t>(w)] |= static_cast<std::uint8_t>(1u << u);
                progress = true;
            }
        }
    }
    return active != 0;
}

bool k4_minor_by_branch_sets(const SmallGraph& g) {
    if (g.n < 4 || g.edge_count() < 6) return false;
    auto adj = g.adjacency();
    std::uint8_t conn[256];
    int nc = connected_subsets(adj, g.n, conn);
    for (int i1 = 0; i1 < nc; ++i1) {
        std::uint8_t s1 = conn[i1];
        std::uint8_t n1 = neighbor_mask(adj, s1);
        if (popcount8(n1) < 3) continue;
        int min1 = std::countr_zero(static_cast<unsigned>(s1));
        for (int i2 = 0; i2 < nc; ++i2) {
            std::uint8_t s2 = conn[i2];
            if ((s2 & s1) || std::countr_zero(static_cast<unsigned>(s2)) <= min1) continue;
            if (!(n1 & s2)) continue;
            std::uint8_t used2 = static_cast<std::uint8_t>(s1 | s2);
            std::uint8_t n2 = neighbor_mask(adj, s2);
            int min2 = std::countr_zero(static_cast<unsigned>(s2));
            for (int i3 = 0; i3 < nc; ++i3) {
                std::uint8_t s3 = conn[i3];
                if ((s3 & used2) || std::countr_zero(static_cast<unsigned>(s3)) <= min2) continue;
                if (!(n1 & s3) || !(n2 & s3)) continue;
                std::uint8_t used3 = static_cast<std::uint8_t>(used2 | s3);
                std::uint8_t n3 = neighbor_mask(adj, s3);
                int min3 = std::countr_zero(static_cast<unsigned>(s3));
                for (int i4 = 0; i4 < nc; ++i4) {
                    std::uint8_t s4 = conn[i4];
                    if ((s4 & used3) || std::countr_zero(static_cast<unsigned>(s4)) <= min3) continue;
                    if ((n1 & s4) && (n2 & s4) && (n3 & s4)) return true;
                }
            }
        }
    }
    return false;
}

bool has_k4_minor(const SmallGraph& g) {
    bool a = k4_minor_by_reduction(g);
    bool b = k4_minor_by_branch_sets(g);
    if (a != b) throw std::logic_error("K4 minor algorithms disagree");
    return a;
}

bool has_k23_minor(const SmallGraph& g) {
    if (g.n < 5 || g.edge_count() < 6) return false;
    auto adj = g.adjacency();
    std::uint8_t full = static_cast<std::uint8_t>((1 << g.n) - 1);
    std::uint8_t conn[256];
    int nc = connected_subsets(adj, g.n, conn);
    std::uint8_t cand[256];
    for (int i1 = 0; i1 < nc; ++i1) {
        std::uint8_t a1 = conn[i1];
        std::uint8_t na1 = neighbor_mask(adj, a1);
        if (popcount8(na1) < 3) continue;
        int min1 = std::countr_zero(static_cast<unsigned>(a1));
        for (int i2 = 0; i2 < nc; ++i2) {
            std::uint8_t a2 = conn[i2];
            if ((a2 & a1) || std::countr_zero(static_cast<unsigned>(a2)) <= min1) continue;
            std::uint8_t rest = static_cast<std::uint8_t>(full & ~(a1 | a2));
            if (popcount8(rest) < 3) continue;
            std::uint8_t na2 = neighbor_mask(adj, a2);
            if (popcount8(static_cast<std::uint8_t>(na2 & rest)) < 3) continue;
            if (popcount8(static_cast<std::uint8_t>(na1 & rest)) < 3) continue;
            int ncand = 0;
            for (int i = 0; i < nc; ++i) {
                std::uint8_t s = conn[i];
                if (s & ~rest) continue;
                if ((na1 & s) && (na2 & s)) cand[ncand++] = s;
            }
            if (ncand < 3) continue;
            // inclusion-minimal candidates suffice: shrinking a branch set
            // preserves disjointness and it stays joined to both sides
            int nmin = 0;
            for (int i = 0; i < ncand; ++i) {
                bool minimal = true;
                for (int j = 0; j < ncand && minimal; ++j)
                    if (j != i && (cand[j] & ~cand[i]) == 0 && cand[j] != cand[i]) minimal = false;
                if (minimal) cand[nmin++] = cand[i];
            }
            for (int i = 0; i < nmin; ++i)
                for (int j = i + 1; j < nmin; ++j) {
                    if (cand[i] & cand[j]) continue;
                    std::uint8_t ij = static_cast<std::uint8_t>(cand[i] | cand[j]);
                    for (int k = j + 1; k < nmin; ++k)
                        if (!(cand[k] & ij)) return true;
                }
        }
    }
    return false;
}

BigInt OracleTable::count(Level level, int n, int q) const {
    if (n < 1 || n > max_n) throw std::out_of_range("oracle count: n out of range");
    auto sum_row = [&](const std::vector<std::uint64_t>& row) {
        BigInt s = 0;
        if (q >= 0) {
            if (q < static_cast<int>(row.size())) s = row[static_cast<std::size_t>(q)];
        } else {
            for (std::uint64_t v : row) s += v;
        }
        return s;
    };
    switch (level) {
        case Level::Connected: return sum_row(connected_q[static_cast<std::size_t>(n)]);
        case Level::Biconnected: return sum_row(biconnected_q[static_cast<std::size_t>(n)]);
        case Level::All: {
            BigInt s = 0;
            const auto& byq = all_qk[static_cast<std::size_t>(n)];
            for (int qq = 0; qq < static_cast<int>(byq.size()); ++qq) {
                if (q >= 0 && qq != q) continue;
                for (std::uint64_t v : byq[static_cast<std::size_t>(qq)]) s += v;
            }
            return s;
        }
    }
    return 0;
}

BigInt OracleTable::count_components(int n, int k) const {
    if (n < 1 || n > max_n) throw std::out_of_range("oracle count: n out of range");
    BigInt s = 0;
    for (const auto& row : all_qk[static_cast<std::size_t>(n)])
        if (k < static_cast<int>(row.size())) s += row[static_cast<std::size_t>(k)];
    return s;
}

BigInt OracleTable::total(int n) const { return count(Level::All, n, -1); }

namespace {

struct Tally {
    std::vector<std::vector<std::vector<std::uint64_t>>> all_qk;
    std::vector<std::vector<std::uint64_t>> connected_q;
    std::vector<std::vector<std::uint64_t>> biconnected_q;

    explicit Tally(int n_max) {
        all_qk.resize(static_cast<std::size_t>(n_max) + 1);
        connected_q.resize(static_cast<std::size_t>(n_max) + 1);
        biconnected_q.resize(static_cast<std::size_t>(n_max) + 1);
        for (int n = 1; n <= n_max; ++n) {
            int qmax = n * (n - 1) / 2;
            all_qk[static_cast<std::size_t>(n)].assign(
                static_cast<std::size_t>(qmax) + 1,
                std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
            connected_q[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(qmax) + 1, 0);
            biconnected_q[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(qmax) + 1, 0);
        }
    }

    void merge(const Tally& o) {
        for (std::size_t n = 0; n < all_qk.size(); ++n) {
            for (std::size_t q = 0; q < all_qk[n].size(); ++q) {
                for (std::size_t k = 0; k < all_qk[n][q].size(); ++k) all_qk[n][q][k] += o.all_qk[n][q][k];
                connected_q[n][q] += o.connected_q[n][q];
                biconnected_q[n][q] += o.biconnected_q[n][q];
            }
        }
    }
};

void classify_range(int n, std::uint64_t lo, std::uint64_t hi, std::vector<Tally>& tallies,
                    const std::vector<Family>& families) {
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
        SmallGraph g{n, static_cast<std::uint32_t>(mask)};
        int q = g.edge_count();
        int comps = component_count(g);
        bool conn = comps == 1;
        bool bicon = conn && is_biconnected(g);
        bool k4 = n <= 6 ? has_k4_minor(g) : k4_minor_by_reduction(g);
        bool k23 = has_k23_minor(g);
        if (bicon && !k23 && k4) {
            // 2-connected without a K2,3 minor but with a K4 minor must be K4 itself
            if (!(n == 4 && q == 6))
                throw std::logic_error("structure check failed for 2-connected K2,3-minor-free graph");
        }
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            bool member = false;
            switch (families[fi]) {
                case Family::SeriesParallel: member = !k4; break;
                case Family::Outerplanar: member = !k4 && !k23; break;
                case Family::K23MinorFree: member = !k23; break;
            }
            if (!member) continue;
            Tally& t = tallies[fi];
            t.all_qk[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)]
                    [static_cast<std::size_t>(comps)]++;
            if (conn) t.connected_q[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)]++;
            if (bicon) t.biconnected_q[static_cast<std::size_t>(n)][static_cast<std::size_t>(q)]++;
        }
    }
}

}  // namespace

std::map<Family, OracleTable> classify_and_count(int n_max, const std::vector<Family>& families,
                                                 int threads, bool allow_n8) {
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    if (n_max > 8 || (n_max == 8 && !allow_n8))
        throw std::invalid_argument("n_max > 7 requires the explicit large-run flag (and n_max <= 8)");
    std::vector<Tally> totals(families.size(), Tally(n_max));
    for (int n = 1; n <= n_max; ++n) {
        std::uint64_t nmasks = 1ull << (n * (n - 1) / 2);
        int nt = std::max(1, threads);
        if (nt == 1 || nmasks < 4096) {
            classify_range(n, 0, nmasks, totals, families);
        } else {
            std::vector<std::vector<Tally>> parts(static_cast<std::size_t>(nt),
                                                  std::vector<Tally>(families.size(), Tally(n_max)));
            std::vector<std::thread> pool;
            std::uint64_t chunk = (nmasks + static_cast<std::uint64_t>(nt) - 1) / static_cast<std::uint64_t>(nt);
            for (int t = 0; t < nt; ++t) {
                std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
                std::uint64_t hi = std::min(nmasks, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([n, lo, hi, &parts, t, &families] {
                    classify_range(n, lo, hi, parts[static_cast<std::size_t>(t)], families);
                });
            }
            for (auto& th : pool) th.join();
            for (auto& part : parts)
                for (std::size_t fi = 0; fi < families.size(); ++fi) totals[fi].merge(part[fi]);
        }
    }
    std::map<Family, OracleTable> out;
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        OracleTable t;
        t.family = families[fi];
        t.max_n = n_max;
        t.all_qk = std::move(totals[fi].all_qk);
        t.connected_q = std::move(totals[fi].connected_q);
        t.biconnected_q = std::move(totals[fi].biconnected_q);
        out.emplace(families[fi], std::move(t));
    }
    return out;
}

void check_k4_agreement(int max_full, int samples_at_7, std::uint64_t seed) {
    for (int n = 1; n <= max_full; ++n) {
        std::uint64_t nmasks = 1ull << (n * (n - 1) / 2);
        for (std::uint64_t mask = 0; mask < nmasks; ++mask) {
            has_k4_minor(SmallGraph{n, static_cast<std::uint32_t>(mask)});  // throws on mismatch
        }
    }
    std::mt19937_64 rng(seed);
    const std::uint32_t all7 = (1u << 21) - 1;
    for (int i = 0; i < samples_at_7; ++i) {
        has_k4_minor(SmallGraph{7, static_cast<std::uint32_t>(rng() & all7)});
    }
}

}  // namespace graphenum::oracle
