#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "ldpc/degree_distribution.hpp"
#include "ldpc/errors.hpp"
#include "ldpc/factor_graph.hpp"
#include "ldpc/rng.hpp"

namespace ldpc {

struct ConstructionSpec {
    int n = 0;
    int m = 0;
    std::vector<int> vn_degrees;   // per-VN target degrees, size n
    std::uint64_t seed = 0;        // used by degree draws and QC shift ties; PEG itself is deterministic
    std::optional<int> circulant_size;
    bool cn_regular = true;        // cap CN degrees at E/m (requires m | E)
    bool allow_degree_one = false; // degree-1 VNs are impractical; opt in explicitly

    static ConstructionSpec vn_regular(int n, int m, int dv, std::uint64_t seed) {
        ConstructionSpec s;
        s.n = n;
        s.m = m;
        s.vn_degrees.assign(static_cast<std::size_t>(n), dv);
        s.seed = seed;
        return s;
    }
};

/// Draw per-VN degrees from a node-perspective distribution. Largest-
/// remainder rounding of the expected counts, then a seeded shuffle of the
/// resulting multiset across VN positions.
inline std::vector<int> draw_vn_degrees(const std::map<int, double>& vn_fractions, int n, std::uint64_t seed) {
    if (n < 1) throw InfeasibleSpec("need n >= 1");
    std::vector<std::pair<int, double>> items(vn_fractions.begin(), vn_fractions.end());
    std::vector<int> counts(items.size(), 0);
    int assigned = 0;
    std::vector<std::pair<double, std::size_t>> remainders;
    for (std::size_t i = 0; i < items.size(); ++i) {
        double exact = items[i].second * n;
        counts[i] = static_cast<int>(exact);
        assigned += counts[i];
        remainders.emplace_back(exact - counts[i], i);
    }
    std::sort(remainders.begin(), remainders.end(), [](auto& a, auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int k = 0; assigned < n; ++k, ++assigned) counts[remainders[k % remainders.size()].second]++;

    std::vector<int> degrees;
    for (std::size_t i = 0; i < items.size(); ++i)
        degrees.insert(degrees.end(), counts[i], items[i].first);
    SplitMix64 rng(mix_u64(seed ^ 0x5be5a1ded0c1e5ULL));
    for (int i = n - 1; i > 0; --i)
        std::swap(degrees[i], degrees[rng.bounded(static_cast<std::uint64_t>(i + 1))]);
    return degrees;
}

namespace detail {

inline bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// BFS depths of all CNs from VN root in the partial graph; unreached CNs get -1.
inline void cn_depths_from(const std::vector<std::vector<int>>& vn_adj,
                           const std::vector<std::vector<int>>& cn_adj,
                           int root_vn, std::vector<int>& cn_depth, std::vector<int>& vn_depth) {
    std::fill(cn_depth.begin(), cn_depth.end(), -1);
    std::fill(vn_depth.begin(), vn_depth.end(), -1);
    vn_depth[root_vn] = 0;
    std::deque<std::pair<int, bool>> q; // (index, is_cn)
    q.emplace_back(root_vn, false);
    while (!q.empty()) {
        auto [idx, is_cn] = q.front();
        q.pop_front();
        if (is_cn) {
            for (int u : cn_adj[idx])
                if (vn_depth[u] < 0) {
                    vn_depth[u] = cn_depth[idx] + 1;
                    q.emplace_back(u, false);
                }
        } else {
            for (int r : vn_adj[idx])
                if (cn_depth[r] < 0) {
                    cn_depth[r] = vn_depth[idx] + 1;
                    q.emplace_back(r, true);
                }
        }
    }
}

// Shortest cycle through edge (vn, cn): declared below, defined with qc_lift.
inline int cycle_through_edge(const std::vector<std::vector<int>>& vn_adj,
                              const std::vector<std::vector<int>>& cn_adj, int vn, int cn);

struct FourCycle {
    int u, v, r1, r2; // u-r1-v-r2-u
};

// VN pairs sharing two CNs, in lexicographic VN order.
inline std::vector<FourCycle> find_four_cycles(const std::vector<std::vector<int>>& vn_adj) {
    std::vector<FourCycle> out;
    std::map<std::pair<int, int>, int> pair_owner;
    for (int u = 0; u < static_cast<int>(vn_adj.size()); ++u) {
        const auto& a = vn_adj[u];
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                auto key = std::minmax(a[i], a[j]);
                auto [it, fresh] = pair_owner.emplace(key, u);
                if (!fresh) out.push_back(FourCycle{it->second, u, key.first, key.second});
            }
    }
    return out;
}

// Remove 4-cycles left by the greedy endgame using degree-preserving edge
// swaps: detach one cycle edge (v, r), pick another edge (w, r3), and rewire
// to (v, r3), (w, r). A swap is accepted only when neither new edge closes a
// 4-cycle, so each round strictly shrinks the 4-cycle count. Cycles with no
// such swap (tiny graphs where girth 4 is forced) are left in place.
inline void repair_four_cycles(std::vector<std::vector<int>>& vn_adj,
                               std::vector<std::vector<int>>& cn_adj) {
    const int n = static_cast<int>(vn_adj.size());
    auto detach = [&](int u, int r) {
        vn_adj[u].erase(std::find(vn_adj[u].begin(), vn_adj[u].end(), r));
        cn_adj[r].erase(std::find(cn_adj[r].begin(), cn_adj[r].end(), u));
    };
    auto attach = [&](int u, int r) {
        vn_adj[u].push_back(r);
        cn_adj[r].push_back(u);
    };

    auto try_fix = [&](const FourCycle& cyc) {
        const std::pair<int, int> cycle_edges[4] = {
            {cyc.v, cyc.r2}, {cyc.v, cyc.r1}, {cyc.u, cyc.r2}, {cyc.u, cyc.r1}};
        for (auto [v, r] : cycle_edges) {
            detach(v, r);
            for (int w = 0; w < n; ++w) {
                if (w == cyc.u || w == cyc.v) continue;
                if (contains(vn_adj[w], r)) continue;
                for (int r3 : std::vector<int>(vn_adj[w])) {
                    if (r3 == r || contains(vn_adj[v], r3)) continue;
                    detach(w, r3);
                    attach(v, r3);
                    attach(w, r);
                    if (cycle_through_edge(vn_adj, cn_adj, v, r3) > 4 &&
                        cycle_through_edge(vn_adj, cn_adj, w, r) > 4)
                        return true;
                    detach(v, r3);
                    detach(w, r);
                    attach(w, r3);
                }
            }
            attach(v, r);
        }
        return false;
    };

    for (int round = 0; round < n * 4; ++round) {
        auto cycles = find_four_cycles(vn_adj);
        if (cycles.empty()) return;
        bool any_fixed = false;
        for (const auto& cyc : cycles)
            if (try_fix(cyc)) { // adjacency changed; rescan before touching the rest
                any_fixed = true;
                break;
            }
        if (!any_fixed) return; // every remaining 4-cycle is forced
    }
}

} // namespace detail

/// Progressive edge growth. VNs are placed in index order; each new edge
/// goes to the CN at maximal BFS depth from the VN's current subtree
/// (unreached CNs count as infinitely deep), ties broken by lowest current
/// CN degree, then lowest index. This tie order makes the construction
/// deterministic for a given spec. A degree-preserving swap pass then clears
/// any 4-cycles the capacity endgame forced, when a clearing swap exists.
inline FactorGraph peg_construct(const ConstructionSpec& spec) {
    const int n = spec.n, m = spec.m;
    if (n < 1 || m < 1) throw InfeasibleSpec("need n >= 1 and m >= 1");
    if (static_cast<int>(spec.vn_degrees.size()) != n)
        throw InfeasibleSpec("vn_degrees must have one entry per VN");
    long long E = 0;
    for (int d : spec.vn_degrees) {
        if (d < 1) throw InfeasibleSpec("VN degree targets must be >= 1");
        if (d < 2 && !spec.allow_degree_one)
            throw InfeasibleSpec("degree-1 VNs require allow_degree_one");
        if (d > m) throw InfeasibleSpec("VN degree exceeds CN count (parallel edge unavoidable)");
        E += d;
    }
    long long cap = std::numeric_limits<long long>::max();
    if (spec.cn_regular) {
        if (E % m != 0)
            throw InfeasibleSpec("CN-regular construction needs m | E (E=" + std::to_string(E) + ", m=" + std::to_string(m) + ")");
        cap = E / m;
    }

    std::vector<std::vector<int>> vn_adj(n), cn_adj(m);
    std::vector<int> cn_deg(m, 0), cn_depth(m), vn_depth(n);

    for (int u = 0; u < n; ++u) {
        for (int k = 0; k < spec.vn_degrees[static_cast<std::size_t>(u)]; ++k) {
            int best = -1;
            if (k == 0) {
                // first edge: least-filled CN
                for (int r = 0; r < m; ++r) {
                    if (cn_deg[r] >= cap) continue;
                    if (best < 0 || cn_deg[r] < cn_deg[best]) best = r;
                }
            } else {
                detail::cn_depths_from(vn_adj, cn_adj, u, cn_depth, vn_depth);
                long long best_depth = -1;
                for (int r = 0; r < m; ++r) {
                    if (cn_deg[r] >= cap) continue;
                    if (cn_depth[r] == 1) continue; // already attached to u
                    long long depth = cn_depth[r] < 0 ? std::numeric_limits<long long>::max()
                                                      : cn_depth[r];
                    if (best < 0 || depth > best_depth ||
                        (depth == best_depth && cn_deg[r] < cn_deg[best])) {
                        best = r;
                        best_depth = depth;
                    }
                }
            }
            if (best < 0)
                throw InfeasibleSpec("PEG dead end at VN " + std::to_string(u) + " edge " + std::to_string(k));
            vn_adj[u].push_back(best);
            cn_adj[best].push_back(u);
            cn_deg[best]++;
        }
    }

    detail::repair_four_cycles(vn_adj, cn_adj);

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(E));
    for (int u = 0; u < n; ++u)
        for (int r : vn_adj[u]) edges.emplace_back(u, r);
    return FactorGraph::from_edges(n, m, std::move(edges));
}

/// Girth of the bipartite graph: BFS from every VN, recording the shortest
/// cycle closed by a non-tree edge. Even and >= 4 for simple bipartite
/// graphs; nullopt for forests.
inline std::optional<int> girth(const FactorGraph& g) {
    const int n = g.vn_count(), m = g.cn_count();
    const int total = n + m; // VNs then CNs
    std::vector<int> dist(total), parent(total);
    int best = std::numeric_limits<int>::max();
    std::vector<int> queue;
    queue.reserve(total);
    for (int root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int x = queue[head];
            if (2 * dist[x] >= best) break; // deeper levels cannot improve
            bool x_is_vn = x < n;
            const auto& nbrs = x_is_vn ? g.vn_neighbors(x) : g.cn_neighbors(x - n);
            for (int y0 : nbrs) {
                int y = x_is_vn ? y0 + n : y0;
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if (y != parent[x] && x != parent[y]) {
                    best = std::min(best, dist[x] + dist[y] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

namespace detail {

// Shortest cycle through the (new) edge (vn, cn) in adjacency lists that
// already contain it: 1 + shortest alternative path vn -> cn.
inline int cycle_through_edge(const std::vector<std::vector<int>>& vn_adj,
                              const std::vector<std::vector<int>>& cn_adj,
                              int vn, int cn) {
    const int n = static_cast<int>(vn_adj.size());
    const int m = static_cast<int>(cn_adj.size());
    std::vector<int> dist(static_cast<std::size_t>(n) + m, -1);
    std::vector<int> queue;
    dist[vn] = 0;
    queue.push_back(vn);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        bool x_is_vn = x < n;
        const auto& nbrs = x_is_vn ? vn_adj[x] : cn_adj[x - n];
        for (int y0 : nbrs) {
            int y = x_is_vn ? y0 + n : y0;
            if (x == vn && y == cn + n) continue; // skip the edge itself
            if (x == cn + n && y == vn) continue;
            if (dist[y] >= 0) continue;
            dist[y] = dist[x] + 1;
            if (y == cn + n) return dist[y] + 1;
            queue.push_back(y);
        }
    }
    return std::numeric_limits<int>::max(); // no alternative path: edge is a bridge
}

} // namespace detail

/// Circulant lift: VN u becomes copies u*L..u*L+L-1 (same for CNs), and each
/// base edge becomes L edges with a cyclic shift, copy t of the VN joining
/// copy (t + shift) mod L of the CN. Shifts are chosen edge by edge to
/// maximize the shortest cycle through the new circulant, scanning candidate
/// shifts in a seeded random order so ties vary across seeds.
inline FactorGraph qc_lift(const FactorGraph& base, int circulant_size, std::uint64_t seed) {
    const int L = circulant_size;
    if (L < 1) throw InfeasibleSpec("circulant size must be >= 1");
    const int n = base.vn_count(), m = base.cn_count();

    std::vector<std::vector<int>> vn_adj(static_cast<std::size_t>(n) * L);
    std::vector<std::vector<int>> cn_adj(static_cast<std::size_t>(m) * L);
    SplitMix64 rng(mix_u64(seed ^ 0x9cf1a3b55ca11f7dULL));

    auto add_circulant = [&](int u, int r, int shift) {
        for (int t = 0; t < L; ++t) {
            int uu = u * L + t;
            int rr = r * L + (t + shift) % L;
            vn_adj[uu].push_back(rr);
            cn_adj[rr].push_back(uu);
        }
    };
    auto remove_circulant = [&](int u, int r, int shift) {
        for (int t = 0; t < L; ++t) {
            int uu = u * L + t;
            int rr = r * L + (t + shift) % L;
            vn_adj[uu].pop_back();
            cn_adj[rr].pop_back();
        }
    };

    for (int u = 0; u < n; ++u) {
        for (int r : base.vn_neighbors(u)) {
            std::vector<int> order(static_cast<std::size_t>(L));
            for (int s = 0; s < L; ++s) order[s] = s;
            for (int i = L - 1; i > 0; --i)
                std::swap(order[i], order[rng.bounded(static_cast<std::uint64_t>(i + 1))]);

            int best_shift = order[0];
            long long best_girth = -1;
            for (int s : order) {
                add_circulant(u, r, s);
                // all L copies of the edge are equivalent under the cyclic
                // automorphism while every placed edge is a circulant, so one
                // representative suffices
                long long local = detail::cycle_through_edge(vn_adj, cn_adj, u * L, r * L + s % L);
                remove_circulant(u, r, s);
                if (local > best_girth) {
                    best_girth = local;
                    best_shift = s;
                    if (local == std::numeric_limits<int>::max()) break;
                }
            }
            add_circulant(u, r, best_shift);
        }
    }

    std::vector<std::pair<int, int>> edges;
    for (int uu = 0; uu < n * L; ++uu)
        for (int rr : vn_adj[uu]) edges.emplace_back(uu, rr);
    return FactorGraph::from_edges(n * L, m * L, std::move(edges));
}

/// Build the graph a spec describes: plain PEG at (n, m), or, when
/// circulant_size = L is set, PEG at (n/L, m/L) followed by the lift.
/// QC mode requires the degree targets to be constant within each block of
/// L consecutive VNs (one value per base VN).
inline FactorGraph construct_code(const ConstructionSpec& spec) {
    if (!spec.circulant_size || *spec.circulant_size == 1) return peg_construct(spec);
    const int L = *spec.circulant_size;
    if (L < 1) throw InfeasibleSpec("circulant size must be >= 1");
    if (spec.n % L != 0 || spec.m % L != 0)
        throw InfeasibleSpec("circulant size must divide both n and m");
    ConstructionSpec base = spec;
    base.n = spec.n / L;
    base.m = spec.m / L;
    base.circulant_size.reset();
    base.vn_degrees.clear();
    for (int u0 = 0; u0 < base.n; ++u0) {
        int d = spec.vn_degrees[static_cast<std::size_t>(u0) * L];
        for (int t = 0; t < L; ++t)
            if (spec.vn_degrees[static_cast<std::size_t>(u0) * L + t] != d)
                throw InfeasibleSpec("QC mode needs degree targets constant within each lift block");
        base.vn_degrees.push_back(d);
    }
    return qc_lift(peg_construct(base), L, spec.seed);
}

} // namespace ldpc
