#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ldpc/alist.hpp"
#include "ldpc/config.hpp"
#include "ldpc/errors.hpp"
#include "ldpc/peeling.hpp"
#include "ldpc/reliability.hpp"
#include "ldpc/version.hpp"

namespace ldpc {

struct CompareRow {
    std::string scheme;
    double storage_overhead = 0.0;  // 1/R
    double repair_bw_overhead = 0.0;
    double mttdl_days = 0.0;
    std::string source;             // computed | reference
    std::string citation;           // reference rows only
};

struct CompareOptions {
    StorageSystemParams params{};
    long long samples = 20000; // profiling budget for ldpc schemes
    int exact_upto = 3;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Exact data-loss probability of an (n, k) MDS code under i.i.d. erasures:
/// the binomial tail P(more than m erasures).
inline double mds_loss_probability(int n, int m, double p_erase) {
    double loss = 0.0;
    for (int e = m + 1; e <= n; ++e) {
        double c = 1.0;
        for (int i = 0; i < e; ++i) c *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        loss += c * std::pow(p_erase, e) * std::pow(1.0 - p_erase, n - e);
    }
    return std::min(1.0, loss);
}

namespace detail {

inline CompareRow markov_row(const std::string& name, int n, int k, double bw_cost,
                             StorageSystemParams params) {
    params.bw_cost = bw_cost;
    MarkovSpec spec = MarkovSpec::mds(n, k, params.fail_rate(), repair_rate(params));
    MttdlReport rep = normalize_mttdl(mttdl_closed_form(spec), params, n, "mds");
    CompareRow row;
    row.scheme = name;
    row.storage_overhead = static_cast<double>(n) / static_cast<double>(k);
    row.repair_bw_overhead = bw_cost;
    row.mttdl_days = rep.normalized_mttdl_days();
    row.source = "computed";
    return row;
}

} // namespace detail

/// One comparison row per scheme spec:
///   replicationN          N-way replication
///   rs_N_K                (N, K) MDS code
///   ldpc:PATH             LDPC code from an alist file (profiled by decoding)
///   xorbas_lrc            (10, 6, 5) LRC, reference value
///   binary_lrc            (15, 10, 6) binary LRC, reference value
inline CompareRow compare_scheme(const std::string& spec, const CompareOptions& opts) {
    if (spec.rfind("replication", 0) == 0) {
        std::string arg = spec.substr(11);
        int copies = 0;
        try {
            copies = std::stoi(arg);
        } catch (...) {
            throw ConfigError("bad replication factor in '" + spec + "'");
        }
        if (copies < 2) throw ConfigError("replication factor must be >= 2");
        return detail::markov_row(spec, copies, 1, 1.0, opts.params);
    }
    if (spec.rfind("rs_", 0) == 0) {
        int n = 0, k = 0;
        if (std::sscanf(spec.c_str(), "rs_%d_%d", &n, &k) != 2 || n <= k || k < 1)
            throw ConfigError("bad RS scheme '" + spec + "', expected rs_N_K with N > K >= 1");
        return detail::markov_row(spec, n, k, static_cast<double>(k), opts.params);
    }
    if (spec.rfind("ldpc:", 0) == 0) {
        std::string path = spec.substr(5);
        FactorGraph g = read_alist_file(path);
        ProfileOptions popts;
        popts.samples = opts.samples;
        popts.exact_upto = opts.exact_upto;
        popts.seed = opts.seed;
        popts.threads = opts.threads;
        ToleranceProfile profile = tolerance_profile(g, popts);
        MttdlReport rep = mttdl_for_graph(g, profile, opts.params);
        CompareRow row;
        row.scheme = spec;
        int k = g.vn_count() - g.cn_count();
        if (k < 1) throw ConfigError("graph in '" + path + "' has no data blocks (m >= n)");
        row.storage_overhead = static_cast<double>(g.vn_count()) / static_cast<double>(k);
        row.repair_bw_overhead = rep.bw_cost;
        row.mttdl_days = rep.normalized_mttdl_days();
        row.source = "computed";
        return row;
    }
    if (spec == "xorbas_lrc" || spec == "xorbas_lrc_10_6_5")
        return CompareRow{spec, 1.6, 5.0, 7.38e7, "reference", "(10, 6, 5) Xorbas LRC"};
    if (spec == "binary_lrc" || spec == "binary_lrc_15_10_6")
        return CompareRow{spec, 1.5, 6.0, 3.00e4, "reference", "(15, 10, 6) binary LRC"};
    throw ConfigError("unknown scheme '" + spec + "'");
}

inline std::vector<CompareRow> compare_schemes(const std::vector<std::string>& specs,
                                               const CompareOptions& opts) {
    std::vector<CompareRow> rows;
    for (const auto& s : specs) rows.push_back(compare_scheme(s, opts));
    return rows;
}

struct LossCurveRow {
    double p_erase = 0.0;
    double ldpc_loss = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double rs_loss = 0.0;   // analytic MDS tail
    double rep3_loss = 0.0; // analytic 3-replication tail
};

inline std::vector<LossCurveRow> loss_curve(const FactorGraph& g, const std::vector<double>& p_grid,
                                            long long trials, std::uint64_t seed, int rs_n, int rs_k,
                                            int threads = 1) {
    std::vector<LossCurveRow> rows;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        double p = p_grid[i];
        if (p < 0.0 || p > 1.0) throw ConfigError("erasure grid value outside [0,1]");
        LossCurveRow row;
        row.p_erase = p;
        LossEstimate est = data_loss_probability(g, p, trials, seed + i, threads);
        row.ldpc_loss = est.estimate;
        row.ci_lo = est.ci_lo;
        row.ci_hi = est.ci_hi;
        row.rs_loss = mds_loss_probability(rs_n, rs_n - rs_k, p);
        row.rep3_loss = mds_loss_probability(3, 2, p);
        rows.push_back(row);
    }
    return rows;
}

// ---- CSV ----------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header_.size()) throw Error("CSV row width mismatch");
        rows_.push_back(std::move(cells));
    }

    /// Render with the trailing reproducibility stamp.
    std::string str(std::uint64_t seed, std::uint64_t config_hash) const {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_) append_line(out, r);
        char meta[128];
        std::snprintf(meta, sizeof(meta), "# ldpctool %s seed=%llu config_hash=%016llx\n", kVersion,
                      static_cast<unsigned long long>(seed), static_cast<unsigned long long>(config_hash));
        out += meta;
        return out;
    }

private:
    static void append_line(std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += cells[i];
            out += (i + 1 < cells.size()) ? "," : "\n";
        }
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace ldpc
