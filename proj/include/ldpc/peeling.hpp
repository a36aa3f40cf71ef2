#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "ldpc/errors.hpp"
#include "ldpc/factor_graph.hpp"
#include "ldpc/rng.hpp"

namespace ldpc {

struct DecodeResult {
    std::vector<int> recovered; // VNs repaired, ascending
    std::vector<int> residual;  // VNs still erased (a stopping set when nonempty)
    int iterations = 0;         // peeling passes
    bool success() const { return residual.empty(); }
};

/// Peel the erasure pattern: while some CN has exactly one erased neighbor,
/// resolve that neighbor. Each pass resolves every CN that was singly
/// connected at the start of the pass. The residual is the unique maximal
/// stopping set contained in the erased set.
inline DecodeResult peel_decode(const FactorGraph& g, const std::vector<int>& erased) {
    const int n = g.vn_count(), m = g.cn_count();
    std::vector<char> is_erased(static_cast<std::size_t>(n), 0);
    for (int u : erased) {
        if (u < 0 || u >= n) throw IndexOutOfRange("erased VN index " + std::to_string(u));
        is_erased[static_cast<std::size_t>(u)] = 1;
    }
    std::vector<int> erased_cnt(static_cast<std::size_t>(m), 0);
    for (int r = 0; r < m; ++r)
        for (int u : g.cn_neighbors(r)) erased_cnt[static_cast<std::size_t>(r)] += is_erased[static_cast<std::size_t>(u)];

    DecodeResult res;
    std::vector<int> frontier;
    for (int r = 0; r < m; ++r)
        if (erased_cnt[static_cast<std::size_t>(r)] == 1) frontier.push_back(r);

    while (!frontier.empty()) {
        res.iterations++;
        std::vector<int> next;
        for (int r : frontier) {
            if (erased_cnt[static_cast<std::size_t>(r)] != 1) continue; // resolved earlier this pass
            int victim = -1;
            for (int u : g.cn_neighbors(r))
                if (is_erased[static_cast<std::size_t>(u)]) { victim = u; break; }
            is_erased[static_cast<std::size_t>(victim)] = 0;
            res.recovered.push_back(victim);
            for (int r2 : g.vn_neighbors(victim)) {
                if (--erased_cnt[static_cast<std::size_t>(r2)] == 1) next.push_back(r2);
            }
        }
        frontier = std::move(next);
    }
    for (int u = 0; u < n; ++u)
        if (is_erased[static_cast<std::size_t>(u)]) res.residual.push_back(u);
    std::sort(res.recovered.begin(), res.recovered.end());
    return res;
}

/// True when every CN touching the set touches it at least twice.
inline bool is_stopping_set(const FactorGraph& g, const std::vector<int>& vns) {
    if (vns.empty()) return false;
    std::vector<int> hits(static_cast<std::size_t>(g.cn_count()), 0);
    for (int u : vns)
        for (int r : g.vn_neighbors(u)) hits[static_cast<std::size_t>(r)]++;
    for (int h : hits)
        if (h == 1) return false;
    return true;
}

struct StoppingSearchOptions {
    long long node_budget = 200'000'000; // recursion nodes before BudgetExceeded
};

namespace detail {

// Depth-first subset enumeration of exactly `want` VNs from `next_vn` on.
// deficient = CNs currently touched exactly once; each added VN can repair at
// most its own degree of them, which bounds the branch.
inline bool stopping_set_dfs(const FactorGraph& g, int next_vn, int want, int deficient,
                             std::vector<int>& hits, std::vector<int>& chosen,
                             long long& budget, int max_vn_degree) {
    if (want == 0) return deficient == 0;
    if (deficient > want * max_vn_degree) return false;
    const int n = g.vn_count();
    // not enough VNs left
    if (n - next_vn < want) return false;
    for (int u = next_vn; u < n; ++u) {
        if (--budget < 0) throw BudgetExceeded("stopping-set search exceeded node budget");
        int delta = 0;
        for (int r : g.vn_neighbors(u)) {
            int h = hits[static_cast<std::size_t>(r)]++;
            if (h == 0) ++delta;
            else if (h == 1) --delta;
        }
        chosen.push_back(u);
        if (stopping_set_dfs(g, u + 1, want - 1, deficient + delta, hits, chosen, budget, max_vn_degree))
            return true;
        chosen.pop_back();
        for (int r : g.vn_neighbors(u)) hits[static_cast<std::size_t>(r)]--;
    }
    return false;
}

} // namespace detail

/// Smallest stopping-set size up to weight_cutoff, by exhaustive subset
/// search; nullopt when no stopping set of size <= cutoff exists.
inline std::optional<int> stopping_number_exact(const FactorGraph& g, int weight_cutoff,
                                                const StoppingSearchOptions& opts = {}) {
    if (weight_cutoff < 1) throw Error("weight_cutoff must be >= 1");
    int max_deg = 0;
    for (int u = 0; u < g.vn_count(); ++u) max_deg = std::max(max_deg, g.vn_degree(u));
    long long budget = opts.node_budget;
    std::vector<int> hits(static_cast<std::size_t>(g.cn_count()), 0);
    std::vector<int> chosen;
    for (int w = 1; w <= weight_cutoff; ++w) {
        if (detail::stopping_set_dfs(g, 0, w, 0, hits, chosen, budget, max_deg))
            return w;
    }
    return std::nullopt;
}

struct ToleranceProfile {
    int n = 0;
    int m = 0;
    std::vector<double> q;          // q[i] = P(uniform i-erasure is correctable), i = 0..levels
    std::vector<double> p;          // p[i] = q[i+1]/q[i], truncated where q hits 0
    std::optional<int> s_star;      // first level with q < 1, when observed
    long long n_s = 0;              // Monte-Carlo samples per sampled level
    int exact_upto = 0;             // largest level requested exact
    std::vector<char> level_exact;  // per level: enumerated exhaustively?
    std::optional<int> truncated_at; // first level with q == 0 (p ends there)
};

struct ProfileOptions {
    long long samples = 10000;
    int exact_upto = 2;
    std::uint64_t seed = 0;
    int levels = -1;                  // default: m
    bool force_monte_carlo = false;   // disable the automatic exact switch (testing)
    long long exact_auto_limit = 1'000'000;
    int threads = 1;
};

namespace detail {

// Exact success count over all C(n, w) erasure patterns.
inline void enumerate_level(const FactorGraph& g, int w, long long& success, long long& total) {
    const int n = g.vn_count();
    std::vector<int> comb(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) comb[static_cast<std::size_t>(i)] = i;
    success = 0;
    total = 0;
    if (w == 0) {
        success = total = 1;
        return;
    }
    for (;;) {
        ++total;
        if (peel_decode(g, comb).success()) ++success;
        int i = w - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - w + i) --i;
        if (i < 0) break;
        comb[static_cast<std::size_t>(i)]++;
        for (int j = i + 1; j < w; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline double binom_or_inf(int n, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) {
        acc *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        if (acc > 1e18) return 1e18;
    }
    return acc;
}

template <typename Fn>
inline void parallel_trials(long long trials, int threads, Fn&& body) {
    if (threads <= 1) {
        for (long long t = 0; t < trials; ++t) body(t);
        return;
    }
    std::atomic<long long> cursor{0};
    auto worker = [&] {
        for (;;) {
            long long t = cursor.fetch_add(256);
            if (t >= trials) break;
            long long end = std::min(trials, t + 256);
            for (; t < end; ++t) body(t);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Estimate q_i (and the conditional survival ratios p_i) by enumeration
/// where cheap and seeded Monte Carlo otherwise. Counter-based trial RNG
/// keeps the result identical for any thread count.
inline ToleranceProfile tolerance_profile(const FactorGraph& g, const ProfileOptions& opts) {
    if (opts.samples < 1) throw Error("samples must be >= 1");
    const int n = g.vn_count(), m = g.cn_count();
    const int levels = opts.levels < 0 ? m : opts.levels;

    ToleranceProfile prof;
    prof.n = n;
    prof.m = m;
    prof.n_s = opts.samples;
    prof.exact_upto = opts.exact_upto;
    prof.q.assign(static_cast<std::size_t>(levels) + 1, 0.0);
    prof.level_exact.assign(static_cast<std::size_t>(levels) + 1, 0);

    for (int i = 0; i <= levels; ++i) {
        if (i == 0) {
            prof.q[0] = 1.0;
            prof.level_exact[0] = 1;
            continue;
        }
        if (i > n) {
            prof.q[static_cast<std::size_t>(i)] = 0.0;
            prof.level_exact[static_cast<std::size_t>(i)] = 1;
            continue;
        }
        double patterns = detail::binom_or_inf(n, i);
        bool exact = !opts.force_monte_carlo &&
                     (i <= opts.exact_upto ||
                      patterns <= static_cast<double>(std::max(opts.samples, opts.exact_auto_limit)));
        if (exact) {
            long long success = 0, total = 0;
            detail::enumerate_level(g, i, success, total);
            prof.q[static_cast<std::size_t>(i)] = static_cast<double>(success) / static_cast<double>(total);
            prof.level_exact[static_cast<std::size_t>(i)] = 1;
        } else {
            std::atomic<long long> success{0};
            detail::parallel_trials(opts.samples, opts.threads, [&](long long t) {
                SplitMix64 rng = trial_rng(opts.seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(t));
                std::vector<int> pattern = sample_without_replacement(n, i, rng);
                if (peel_decode(g, pattern).success()) success.fetch_add(1, std::memory_order_relaxed);
            });
            prof.q[static_cast<std::size_t>(i)] =
                static_cast<double>(success.load()) / static_cast<double>(opts.samples);
        }
        // estimates must stay a non-increasing sequence
        prof.q[static_cast<std::size_t>(i)] =
            std::min(prof.q[static_cast<std::size_t>(i)], prof.q[static_cast<std::size_t>(i) - 1]);
    }

    for (int i = 0; i <= levels; ++i) {
        if (prof.q[static_cast<std::size_t>(i)] < 1.0 && !prof.s_star) prof.s_star = i;
        if (prof.q[static_cast<std::size_t>(i)] == 0.0 && !prof.truncated_at) prof.truncated_at = i;
    }
    int p_end = prof.truncated_at ? *prof.truncated_at : levels;
    for (int i = 0; i < p_end; ++i)
        prof.p.push_back(prof.q[static_cast<std::size_t>(i) + 1] / prof.q[static_cast<std::size_t>(i)]);
    return prof;
}

/// Spec-default entry point: q_i exact for i <= exact_upto or whenever the
/// pattern count is below max(n_s, 1e6), Monte Carlo otherwise.
inline ToleranceProfile tolerance_profile(const FactorGraph& g, long long n_s, int exact_upto, std::uint64_t seed) {
    ProfileOptions opts;
    opts.samples = n_s;
    opts.exact_upto = exact_upto;
    opts.seed = seed;
    return tolerance_profile(g, opts);
}

struct LossEstimate {
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0; // 95% Wilson interval
    long long trials = 0;
    long long failures = 0;
};

namespace detail {

inline LossEstimate wilson_interval(long long failures, long long trials) {
    LossEstimate e;
    e.trials = trials;
    e.failures = failures;
    double p = static_cast<double>(failures) / static_cast<double>(trials);
    e.estimate = p;
    const double z = 1.959963984540054; // 95%
    double z2 = z * z;
    double nt = static_cast<double>(trials);
    double denom = 1.0 + z2 / nt;
    double center = (p + z2 / (2.0 * nt)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    e.ci_lo = std::max(0.0, center - half);
    e.ci_hi = std::min(1.0, center + half);
    return e;
}

} // namespace detail

/// Monte-Carlo data-loss probability under i.i.d. VN erasures: fraction of
/// trials where peeling leaves a nonempty residual, with a 95% interval.
inline LossEstimate data_loss_probability(const FactorGraph& g, double p_erase, long long n_s,
                                          std::uint64_t seed, int threads = 1) {
    if (p_erase < 0.0 || p_erase > 1.0) throw Error("erasure probability outside [0,1]");
    if (n_s < 1) throw Error("trial count must be >= 1");
    const int n = g.vn_count();
    std::atomic<long long> failures{0};
    detail::parallel_trials(n_s, threads, [&](long long t) {
        SplitMix64 rng = trial_rng(seed, 0xda7a1055ULL, static_cast<std::uint64_t>(t));
        std::vector<int> erased;
        for (int u = 0; u < n; ++u)
            if (rng.unit_real() < p_erase) erased.push_back(u);
        if (!peel_decode(g, erased).success()) failures.fetch_add(1, std::memory_order_relaxed);
    });
    return detail::wilson_interval(failures.load(), n_s);
}

} // namespace ldpc
