#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldpc/errors.hpp"
#include "ldpc/rational.hpp"

namespace ldpc {

/// Bipartite factor graph of a parity-check matrix: n variable nodes (coded
/// blocks), m check nodes (parity equations). Immutable after construction;
/// adjacency is kept sorted on both sides and parallel edges are rejected,
/// so the graph always describes a binary H.
class FactorGraph {
public:
    /// Build from check-node rows: rows[r] lists the VN indices involved in
    /// parity equation r. Every VN in [0, n) must appear in at least one row.
    static FactorGraph from_parity_rows(const std::vector<std::vector<int>>& rows, int n) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (int u : rows[r]) edges.emplace_back(u, static_cast<int>(r));
        return from_edges(n, static_cast<int>(rows.size()), std::move(edges));
    }

    /// Build from an explicit (vn, cn) edge list.
    static FactorGraph from_edges(int n, int m, std::vector<std::pair<int, int>> edges) {
        if (n < 1 || m < 1) throw EmptyGraph("graph requires n >= 1 and m >= 1");
        FactorGraph g;
        g.vn_adj_.resize(n);
        g.cn_adj_.resize(m);
        for (auto [u, r] : edges) {
            if (u < 0 || u >= n) throw IndexOutOfRange("VN index " + std::to_string(u) + " out of range [0," + std::to_string(n) + ")");
            if (r < 0 || r >= m) throw IndexOutOfRange("CN index " + std::to_string(r) + " out of range [0," + std::to_string(m) + ")");
            g.vn_adj_[u].push_back(r);
            g.cn_adj_[r].push_back(u);
        }
        for (int u = 0; u < n; ++u) {
            auto& a = g.vn_adj_[u];
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw DuplicateEdge("parallel edge at VN " + std::to_string(u));
            if (a.empty())
                throw IsolatedNode("VN " + std::to_string(u) + " has degree 0");
        }
        for (int r = 0; r < m; ++r) std::sort(g.cn_adj_[r].begin(), g.cn_adj_[r].end());
        g.edge_count_ = static_cast<long long>(edges.size());
        if (g.edge_count_ == 0) throw EmptyGraph("graph has no edges");
        return g;
    }

    int vn_count() const { return static_cast<int>(vn_adj_.size()); }
    int cn_count() const { return static_cast<int>(cn_adj_.size()); }
    long long edge_count() const { return edge_count_; }

    const std::vector<int>& vn_neighbors(int u) const { return vn_adj_[u]; }
    const std::vector<int>& cn_neighbors(int r) const { return cn_adj_[r]; }
    int vn_degree(int u) const { return static_cast<int>(vn_adj_[u].size()); }
    int cn_degree(int r) const { return static_cast<int>(cn_adj_[r].size()); }

    bool has_edge(int u, int r) const {
        const auto& a = vn_adj_[u];
        return std::binary_search(a.begin(), a.end(), r);
    }

    bool operator==(const FactorGraph& o) const {
        return vn_adj_ == o.vn_adj_ && cn_adj_ == o.cn_adj_;
    }

private:
    FactorGraph() = default;
    std::vector<std::vector<int>> vn_adj_;
    std::vector<std::vector<int>> cn_adj_;
    long long edge_count_ = 0;
};

/// Average repair bandwidth: sum of d_c,r(d_c,r - 1) over all check nodes,
/// divided by the edge count. Counts the blocks downloaded to rebuild one
/// failed block, averaged over failed VNs weighted by their degree (each
/// incident CN is one repair choice).
inline double repair_bandwidth(const FactorGraph& g) {
    if (g.edge_count() == 0) throw EmptyGraph("repair bandwidth of empty graph");
    long long sum = 0;
    for (int r = 0; r < g.cn_count(); ++r) {
        long long d = g.cn_degree(r);
        sum += d * (d - 1);
    }
    return static_cast<double>(sum) / static_cast<double>(g.edge_count());
}

/// Diagnostic variant weighting each VN uniformly instead of by degree:
/// mean over VNs of the mean (d_c,r - 1) over the VN's incident CNs.
inline double repair_bandwidth_vn_uniform(const FactorGraph& g) {
    if (g.edge_count() == 0) throw EmptyGraph("repair bandwidth of empty graph");
    double total = 0.0;
    for (int u = 0; u < g.vn_count(); ++u) {
        double per_vn = 0.0;
        for (int r : g.vn_neighbors(u)) per_vn += static_cast<double>(g.cn_degree(r) - 1);
        total += per_vn / static_cast<double>(g.vn_degree(u));
    }
    return total / static_cast<double>(g.vn_count());
}

struct RepairPlanEntry {
    int cn = -1;
    std::vector<int> download; // the other VNs on that check
};

/// One repair option per CN incident to the failed VN. The download set is
/// every other VN on that check; all of them are assumed intact.
inline std::vector<RepairPlanEntry> repair_plan(const FactorGraph& g, int failed_vn) {
    if (failed_vn < 0 || failed_vn >= g.vn_count())
        throw IndexOutOfRange("failed VN index " + std::to_string(failed_vn));
    if (g.vn_degree(failed_vn) == 0)
        throw IsolatedNode("VN " + std::to_string(failed_vn) + " has no incident CN");
    std::vector<RepairPlanEntry> plans;
    for (int r : g.vn_neighbors(failed_vn)) {
        RepairPlanEntry e;
        e.cn = r;
        for (int u : g.cn_neighbors(r))
            if (u != failed_vn) e.download.push_back(u);
        plans.push_back(std::move(e));
    }
    return plans;
}

struct MinRepairBandwidth {
    bool feasible = false;
    double dc = 0.0;    // dv_min/(1-R), fractional when infeasible
    double gamma = 0.0; // dc - 1, valid only when feasible
};

/// Minimum repair bandwidth at rate R under a minimum VN degree: achieved by
/// the (dv_min, dc)-regular graph with dc = dv_min/(1-R), which must be an
/// integer strictly greater than dv_min to be realizable.
inline MinRepairBandwidth min_repair_bandwidth(const Rational& rate, int dv_min) {
    if (rate.num() <= 0 || rate.num() >= rate.den())
        throw InvalidRate("rate must satisfy 0 < R < 1, got " + rate.str());
    if (dv_min < 1) throw InvalidRate("dv_min must be >= 1");
    MinRepairBandwidth out;
    // dc = dv_min/(1-R) = dv_min*q/(q-p) for R = p/q
    long long numer = static_cast<long long>(dv_min) * rate.den();
    long long denom = rate.den() - rate.num();
    out.dc = static_cast<double>(numer) / static_cast<double>(denom);
    if (numer % denom == 0) {
        long long dc = numer / denom;
        if (dc > dv_min) {
            out.feasible = true;
            out.gamma = static_cast<double>(dc - 1);
        }
    }
    return out;
}

} // namespace ldpc
