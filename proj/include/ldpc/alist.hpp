#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldpc/errors.hpp"
#include "ldpc/factor_graph.hpp"

namespace ldpc {

// alist text format:
//   n m
//   max_vn_degree max_cn_degree
//   n VN degrees
//   m CN degrees
//   n lines of 1-based CN indices (one per VN)
//   m lines of 1-based VN indices (one per CN)
// Zero entries (padding emitted by some tools) are tolerated on read and
// never written.

inline FactorGraph read_alist(std::istream& in) {
    std::vector<long long> tok;
    long long v;
    while (in >> v) tok.push_back(v);
    std::size_t pos = 0;
    auto next = [&](const char* what) -> long long {
        if (pos >= tok.size()) throw AlistParseError(std::string("alist truncated while reading ") + what);
        return tok[pos++];
    };

    long long n = next("n"), m = next("m");
    if (n < 1 || m < 1) throw AlistParseError("alist header requires n >= 1 and m >= 1");
    long long max_vn = next("max VN degree"), max_cn = next("max CN degree");
    if (max_vn < 0 || max_cn < 0) throw AlistParseError("negative max degree");

    std::vector<long long> vn_deg(n), cn_deg(m);
    for (auto& d : vn_deg) {
        d = next("VN degree");
        if (d < 0 || d > max_vn) throw AlistParseError("VN degree outside [0, max]");
    }
    for (auto& d : cn_deg) {
        d = next("CN degree");
        if (d < 0 || d > max_cn) throw AlistParseError("CN degree outside [0, max]");
    }

    // Adjacency rows may be padded with zeros up to the max degree. Read
    // either exactly deg entries (unpadded) or max entries (padded); detect
    // by checking for zeros.
    // No legitimate adjacency entry is 0 (indices are 1-based), so any run
    // of zeros is padding and can be skipped unconditionally.
    auto skip_zeros = [&] {
        while (pos < tok.size() && tok[pos] == 0) ++pos;
    };
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> vn_rows(n);
    for (long long u = 0; u < n; ++u) {
        long long taken = 0;
        while (taken < vn_deg[u]) {
            long long idx = next("VN adjacency");
            if (idx == 0) continue; // padding
            if (idx < 1 || idx > m) throw AlistParseError("CN index out of range in VN row");
            vn_rows[u].push_back(static_cast<int>(idx - 1));
            ++taken;
        }
        skip_zeros();
        for (int r : vn_rows[u]) edges.emplace_back(static_cast<int>(u), r);
    }
    std::vector<std::vector<int>> cn_rows(m);
    for (long long r = 0; r < m; ++r) {
        long long taken = 0;
        while (taken < cn_deg[r]) {
            long long idx = next("CN adjacency");
            if (idx == 0) continue;
            if (idx < 1 || idx > n) throw AlistParseError("VN index out of range in CN row");
            cn_rows[r].push_back(static_cast<int>(idx - 1));
            ++taken;
        }
        skip_zeros();
    }

    FactorGraph g = FactorGraph::from_edges(static_cast<int>(n), static_cast<int>(m), std::move(edges));

    // The CN half must describe the same edge set.
    for (long long r = 0; r < m; ++r) {
        std::vector<int> got = cn_rows[r];
        std::sort(got.begin(), got.end());
        if (got != g.cn_neighbors(static_cast<int>(r)))
            throw AlistParseError("VN and CN adjacency halves disagree at CN " + std::to_string(r));
    }
    return g;
}

inline void write_alist(std::ostream& out, const FactorGraph& g) {
    int max_vn = 0, max_cn = 0;
    for (int u = 0; u < g.vn_count(); ++u) max_vn = std::max(max_vn, g.vn_degree(u));
    for (int r = 0; r < g.cn_count(); ++r) max_cn = std::max(max_cn, g.cn_degree(r));
    out << g.vn_count() << ' ' << g.cn_count() << '\n';
    out << max_vn << ' ' << max_cn << '\n';
    for (int u = 0; u < g.vn_count(); ++u) out << g.vn_degree(u) << (u + 1 < g.vn_count() ? ' ' : '\n');
    for (int r = 0; r < g.cn_count(); ++r) out << g.cn_degree(r) << (r + 1 < g.cn_count() ? ' ' : '\n');
    for (int u = 0; u < g.vn_count(); ++u) {
        const auto& a = g.vn_neighbors(u);
        for (std::size_t i = 0; i < a.size(); ++i) out << (a[i] + 1) << (i + 1 < a.size() ? ' ' : '\n');
    }
    for (int r = 0; r < g.cn_count(); ++r) {
        const auto& a = g.cn_neighbors(r);
        for (std::size_t i = 0; i < a.size(); ++i) out << (a[i] + 1) << (i + 1 < a.size() ? ' ' : '\n');
    }
}

inline FactorGraph read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingGraphFile("cannot open alist file: " + path);
    return read_alist(in);
}

inline void write_alist_file(const std::string& path, const FactorGraph& g) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write alist file: " + path);
    write_alist(out, g);
}

} // namespace ldpc
