#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ldpc/errors.hpp"
#include "ldpc/factor_graph.hpp"
#include "ldpc/peeling.hpp"

namespace ldpc {

constexpr double kSecondsPerDay = 86400.0;
constexpr double kSecondsPerYear = 365.25 * kSecondsPerDay;

/// System-level parameters for the failure/repair model. Sizes in bytes,
/// bandwidth in bits per second, times in seconds; decimal SI prefixes.
struct StorageSystemParams {
    double total_data_bytes = 40e15;    // C
    double block_bytes = 256e6;         // B
    double disk_count = 2000;           // N_disk
    double disk_capacity_bytes = 20e12; // S
    double node_bandwidth_bps = 1e9;    // r_node
    double trigger_time_s = 900;        // T_t
    double mttf_s = kSecondsPerYear;    // 1/lambda
    double bw_cost = 1.0;               // repair bandwidth overhead of the scheme

    double fail_rate() const { return 1.0 / mttf_s; }

    /// T_r: time to download one disk's worth of repair data across the
    /// surviving nodes, scaled by the scheme's bandwidth overhead.
    double download_time_s() const {
        return disk_capacity_bytes * 8.0 * bw_cost / (node_bandwidth_bps * (disk_count - 1.0));
    }

    void check_valid() const {
        if (total_data_bytes <= 0 || block_bytes <= 0 || disk_count <= 1 || disk_capacity_bytes < 0 ||
            node_bandwidth_bps <= 0 || trigger_time_s < 0 || mttf_s <= 0 || bw_cost <= 0)
            throw ConfigError("storage system parameters must be positive (and N_disk > 1)");
    }
};

/// mu = 1/(T_t + T_r).
inline double repair_rate(const StorageSystemParams& params) {
    params.check_valid();
    return 1.0 / (params.trigger_time_s + params.download_time_s());
}

/// Failure/repair chain of one stripe: states count erased blocks, state i
/// moves up at (n-i)*lambda*p_i, drops to data loss at (n-i)*lambda*(1-p_i)
/// (at (n-m)*lambda from state m), and repairs one block at mu for i >= 1.
struct MarkovSpec {
    int n = 0;
    int m = 0;
    double fail_rate = 0.0;   // lambda
    double repair_rate = 0.0; // mu
    std::vector<double> p;    // p_0..p_{m-1}; shorter vectors are padded with 0

    void check_valid() const {
        if (n < 2 || m < 1 || m >= n) throw ConfigError("need n > m >= 1");
        if (fail_rate < 0 || repair_rate <= 0) throw ConfigError("rates must be nonnegative (mu > 0)");
        if (static_cast<int>(p.size()) > m) throw ConfigError("p vector longer than m");
        for (double v : p)
            if (v < 0.0 || v > 1.0) throw ConfigError("p_i outside [0,1]");
    }

    /// The closed form is a lambda/mu -> 0 limit; flag specs outside that regime.
    bool asymptotic_regime() const { return fail_rate < 0.01 * repair_rate; }

    double p_at(int i) const {
        return i < static_cast<int>(p.size()) ? p[static_cast<std::size_t>(i)] : 0.0;
    }

    static MarkovSpec mds(int n, int k, double fail_rate, double repair_rate) {
        MarkovSpec s;
        s.n = n;
        s.m = n - k;
        s.fail_rate = fail_rate;
        s.repair_rate = repair_rate;
        s.p.assign(static_cast<std::size_t>(s.m), 1.0);
        return s;
    }
};

/// Asymptotic (lambda/mu -> 0) mean time to data loss:
/// (m+1) mu^m / f(n, m, lambda, mu, p), with f the three-summand polynomial
/// over the loss paths. Evaluated as (m+1) / (f/mu^m) so large m cannot
/// underflow mu^m.
inline double mttdl_closed_form(const MarkovSpec& spec) {
    spec.check_valid();
    const double lam = spec.fail_rate, mu = spec.repair_rate;
    const double ratio = lam / mu;
    const int n = spec.n, m = spec.m;

    // f / mu^m, term by term: j-th term is (lam/mu)^j * lam * (1-p_j) *
    // prod_{i<j} p_i * prod_{i<=j} (n-i); the final term has all p's and no
    // (1-p) factor.
    double denom = static_cast<double>(n) * lam * (1.0 - spec.p_at(0));
    double prefix = static_cast<double>(n); // prod_{i<=j}(n-i)
    double p_prod = spec.p_at(0);           // prod_{i<j} p_i at j = 1
    double ratio_pow = 1.0;
    for (int j = 1; j <= m - 1; ++j) {
        prefix *= static_cast<double>(n - j);
        ratio_pow *= ratio;
        denom += ratio_pow * lam * (1.0 - spec.p_at(j)) * p_prod * prefix;
        p_prod *= spec.p_at(j);
    }
    prefix *= static_cast<double>(n - m);
    ratio_pow *= ratio;
    denom += ratio_pow * lam * p_prod * prefix;

    if (denom <= 0.0) throw ZeroDenominator("all survival probabilities 1 with zero failure rate");
    return static_cast<double>(m + 1) / denom;
}

/// Single-term approximation keyed to the stopping number: only p_{s*-1},
/// the first survival probability below 1, matters once lambda/mu is small.
inline double mttdl_dominant(const MarkovSpec& spec, int s_star) {
    spec.check_valid();
    if (s_star < 1 || s_star > spec.m)
        throw InvalidStoppingIndex("s* must be in [1, m]");
    double p = spec.p_at(s_star - 1);
    if (p >= 1.0)
        throw InvalidStoppingIndex("p_{s*-1} = 1; the dominant term vanishes");
    const double lam = spec.fail_rate, mu = spec.repair_rate;
    double denom = lam * (1.0 - p);
    for (int i = 0; i < s_star; ++i) denom *= static_cast<double>(spec.n - i);
    denom *= std::pow(lam / mu, s_star - 1);
    if (denom <= 0.0) throw ZeroDenominator("dominant term vanishes at zero failure rate");
    return static_cast<double>(spec.m + 1) / denom;
}

/// Exact mean absorption time of the chain (no asymptotics): solve
/// (-Q_transient) tau = 1 by Gaussian elimination with partial pivoting and
/// return tau from the all-healthy state. Ground truth for the closed form.
inline double mttdl_ctmc_oracle(const MarkovSpec& spec) {
    spec.check_valid();
    const int n = spec.n, m = spec.m;
    const int dim = m + 1; // transient states 0..m
    const double lam = spec.fail_rate, mu = spec.repair_rate;

    std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0.0));
    for (int i = 0; i <= m; ++i) {
        double up = i < m ? static_cast<double>(n - i) * lam * spec.p_at(i) : 0.0;
        double loss = i < m ? static_cast<double>(n - i) * lam * (1.0 - spec.p_at(i))
                            : static_cast<double>(n - m) * lam;
        double down = i >= 1 ? mu : 0.0;
        double out = up + loss + down;
        a[i][i] = out;
        if (i < m) a[i][i + 1] = -up;
        if (i >= 1) a[i][i - 1] = -down;
        a[i][dim] = 1.0; // E[time to absorption] satisfies (-Q) tau = 1
    }

    for (int col = 0; col < dim; ++col) {
        int piv = col;
        for (int r = col + 1; r < dim; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            throw SingularSystem("data-loss state unreachable; absorption time diverges");
        std::swap(a[col], a[piv]);
        for (int r = 0; r < dim; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (int c = col; c <= dim; ++c) a[r][c] -= f * a[col][c];
        }
    }
    double tau0 = a[0][dim] / a[0][0];
    if (!std::isfinite(tau0) || tau0 <= 0.0)
        throw SingularSystem("ill-conditioned absorption system");
    return tau0;
}

struct MttdlReport {
    double stripe_mttdl_s = 0.0;
    double normalized_mttdl_s = 0.0;
    double stripes = 0.0;
    std::string method;          // closed_form | dominant | ctmc_oracle | mds
    double bw_cost = 0.0;
    bool p_truncated = false;    // profile ran out before m levels; tail taken as 0
    std::string units_note = "bytes/bits-per-second/seconds, SI decimal, year=365.25d";

    double stripe_mttdl_days() const { return stripe_mttdl_s / kSecondsPerDay; }
    double normalized_mttdl_days() const { return normalized_mttdl_s / kSecondsPerDay; }
};

/// Whole-system view: one stripe's MTTDL divided by the stripe count C/(nB).
inline MttdlReport normalize_mttdl(double stripe_mttdl_s, const StorageSystemParams& params, int n,
                                   std::string method = "closed_form") {
    params.check_valid();
    double stripes = params.total_data_bytes / (static_cast<double>(n) * params.block_bytes);
    if (stripes < 1.0) throw ConfigError("C must be at least one stripe (n*B)");
    MttdlReport rep;
    rep.stripe_mttdl_s = stripe_mttdl_s;
    rep.stripes = stripes;
    rep.normalized_mttdl_s = stripe_mttdl_s / stripes;
    rep.method = std::move(method);
    rep.bw_cost = params.bw_cost;
    return rep;
}

/// Reliability of a concrete code: survival probabilities from its decoding
/// profile, bandwidth overhead from its factor graph, closed-form MTTDL
/// normalized to Table-style system scale.
inline MttdlReport mttdl_for_graph(const FactorGraph& g, const ToleranceProfile& profile,
                                   StorageSystemParams params) {
    if (profile.n != g.vn_count() || profile.m != g.cn_count())
        throw ConfigError("profile does not match graph dimensions");
    params.bw_cost = repair_bandwidth(g);
    params.check_valid();

    MarkovSpec spec;
    spec.n = g.vn_count();
    spec.m = g.cn_count();
    spec.fail_rate = params.fail_rate();
    spec.repair_rate = repair_rate(params);
    spec.p.assign(profile.p.begin(), profile.p.end());
    bool truncated = static_cast<int>(spec.p.size()) < spec.m;
    spec.p.resize(static_cast<std::size_t>(spec.m), 0.0); // conservative tail

    MttdlReport rep = normalize_mttdl(mttdl_closed_form(spec), params, spec.n, "closed_form");
    rep.p_truncated = truncated;
    return rep;
}

} // namespace ldpc
