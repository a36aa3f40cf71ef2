// Command-line front end: code construction, decoding profiles, thresholds,
// degree-distribution optimization, and MTTDL comparisons as CSV/JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldpc/alist.hpp"
#include "ldpc/comparison.hpp"
#include "ldpc/config.hpp"
#include "ldpc/construct.hpp"
#include "ldpc/ddopt.hpp"
#include "ldpc/degree_distribution.hpp"
#include "ldpc/density_evolution.hpp"
#include "ldpc/errors.hpp"
#include "ldpc/peeling.hpp"
#include "ldpc/rational.hpp"
#include "ldpc/reliability.hpp"
#include "ldpc/version.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string format = "csv";
    std::string config_path;

    ldpc::StorageSystemParams params() const {
        if (config_path.empty()) return {};
        return ldpc::load_system_config(config_path);
    }

    std::uint64_t config_hash() const {
        if (config_path.empty()) return ldpc::fnv1a_hash("");
        std::ifstream in(config_path);
        if (!in) throw ldpc::ConfigError("cannot open config file: " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ldpc::fnv1a_hash(ss.str());
    }
};

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ldpc::Error("cannot write output file: " + out_path);
    out << text;
}

ldpc::DegreeDistribution::Coeffs parse_coeffs(const std::string& text) {
    // "0.4128:2,0.1789:3" -> {2: 0.4128, 3: 0.1789}
    ldpc::DegreeDistribution::Coeffs coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ldpc::ConfigError("expected coef:degree pairs, got '" + item + "'");
        try {
            double coef = std::stod(item.substr(0, colon));
            int degree = std::stoi(item.substr(colon + 1));
            coeffs[degree] += coef;
        } catch (const ldpc::Error&) {
            throw;
        } catch (...) {
            throw ldpc::ConfigError("cannot parse coefficient pair '" + item + "'");
        }
    }
    if (coeffs.empty()) throw ldpc::ConfigError("empty coefficient list");
    return coeffs;
}

json lambda_to_json(const ldpc::DegreeDistribution::Coeffs& lambda) {
    json j = json::object();
    for (auto [d, v] : lambda) j[std::to_string(d)] = v;
    return j;
}

json meta_json(const GlobalOpts& g) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(g.config_hash()));
    return json{{"version", ldpc::kVersion}, {"seed", g.seed}, {"config_hash", hash}};
}

int cmd_construct(const GlobalOpts& g, int n, int m, int dv, int qc, bool allow_dv1,
                  bool no_cn_regular, const std::string& out_path) {
    ldpc::ConstructionSpec spec = ldpc::ConstructionSpec::vn_regular(n, m, dv, g.seed);
    if (qc > 0) spec.circulant_size = qc;
    spec.allow_degree_one = allow_dv1;
    spec.cn_regular = !no_cn_regular;
    ldpc::FactorGraph graph = ldpc::construct_code(spec);
    std::ostringstream ss;
    ldpc::write_alist(ss, graph);
    write_output(ss.str(), out_path);
    auto gir = ldpc::girth(graph);
    std::cerr << "constructed (" << graph.vn_count() << ", " << graph.vn_count() - graph.cn_count()
              << ") code, girth " << (gir ? std::to_string(*gir) : std::string("inf")) << ", repair bandwidth "
              << ldpc::format_double(ldpc::repair_bandwidth(graph)) << "\n";
    return 0;
}

int cmd_profile(const GlobalOpts& g, const std::string& alist, long long samples, int exact_upto,
                const std::string& out_path) {
    ldpc::FactorGraph graph = ldpc::read_alist_file(alist);
    ldpc::ProfileOptions opts;
    opts.samples = samples;
    opts.exact_upto = exact_upto;
    opts.seed = g.seed;
    opts.threads = g.threads;
    ldpc::ToleranceProfile prof = ldpc::tolerance_profile(graph, opts);
    json j{{"n", prof.n},
           {"m", prof.m},
           {"s_star", prof.s_star ? json(*prof.s_star) : json(nullptr)},
           {"q", prof.q},
           {"p", prof.p},
           {"n_s", prof.n_s},
           {"exact_upto", prof.exact_upto}};
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_threshold(const GlobalOpts&, const std::string& lambda_text, const std::string& rho_text,
                  const ldpc::DeConfig& cfg, const std::string& out_path) {
    auto dd = ldpc::DegreeDistribution::from_edge_perspective_normalized(parse_coeffs(lambda_text),
                                                                         parse_coeffs(rho_text));
    double eps = ldpc::decoding_threshold(dd, cfg);
    double rate = ldpc::design_rate(dd);
    json j{{"epsilon_star", eps}, {"scaled", eps / (1.0 - rate)}, {"rate", rate}};
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_optimize(const GlobalOpts&, const std::string& rate_text, int dc, int dmax, int grid,
                 const std::string& out_path) {
    ldpc::OptProblem p;
    p.rate = ldpc::Rational::parse(rate_text);
    p.dc = dc;
    p.d_max = dmax;
    p.grid_points = grid;
    ldpc::OptimizeResult r = ldpc::optimize_threshold(p);
    json j{{"epsilon_star", r.epsilon_star},
           {"scaled", r.scaled},
           {"lambda", lambda_to_json(r.lambda)},
           {"dv", r.dv}};
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_tradeoff(const GlobalOpts& g, const std::string& rate_text, int dc_from, int dc_to, int dmax,
                 int grid, const std::string& out_path) {
    ldpc::Rational rate = ldpc::Rational::parse(rate_text);
    if (dc_from > dc_to) throw ldpc::ConfigError("--dc-from must be <= --dc-to");
    ldpc::OptProblem base;
    base.d_max = dmax;
    base.grid_points = grid;
    auto rows = ldpc::tradeoff_curve(rate, dc_from, dc_to, base);
    if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"dc", r.dc},
                               {"gamma", r.gamma},
                               {"rate_impossible", r.rate_impossible},
                               {"scaled_threshold", r.scaled},
                               {"dv", r.dv},
                               {"lambda", lambda_to_json(r.lambda)}});
        write_output(json{{"rows", arr}, {"meta", meta_json(g)}}.dump(2) + "\n", out_path);
        return 0;
    }
    ldpc::CsvWriter csv({"dc", "gamma", "scaled_threshold", "dv"});
    for (const auto& r : rows) {
        if (r.rate_impossible)
            csv.add_row({std::to_string(r.dc), std::to_string(r.gamma), "rate_impossible", ""});
        else
            csv.add_row({std::to_string(r.dc), std::to_string(r.gamma), ldpc::format_double(r.scaled),
                         ldpc::format_double(r.dv)});
    }
    write_output(csv.str(g.seed, g.config_hash()), out_path);
    return 0;
}

int cmd_mttdl(const GlobalOpts& g, const std::string& scheme, const std::string& alist, int n, int k,
              long long samples, int exact_upto, const std::string& out_path) {
    ldpc::StorageSystemParams params = g.params();
    json j;
    if (scheme == "ldpc") {
        if (alist.empty()) throw ldpc::ConfigError("--scheme ldpc requires --alist");
        ldpc::FactorGraph graph = ldpc::read_alist_file(alist);
        ldpc::ProfileOptions popts;
        popts.samples = samples;
        popts.exact_upto = exact_upto;
        popts.seed = g.seed;
        popts.threads = g.threads;
        ldpc::ToleranceProfile prof = ldpc::tolerance_profile(graph, popts);
        ldpc::MttdlReport rep = ldpc::mttdl_for_graph(graph, prof, params);
        j = json{{"scheme", "ldpc"},
                 {"n", graph.vn_count()},
                 {"k", graph.vn_count() - graph.cn_count()},
                 {"stripe_mttdl_days", rep.stripe_mttdl_days()},
                 {"normalized_mttdl_days", rep.normalized_mttdl_days()},
                 {"stripes", rep.stripes},
                 {"method", rep.method},
                 {"bw_cost", rep.bw_cost},
                 {"p_truncated", rep.p_truncated},
                 {"s_star", prof.s_star ? json(*prof.s_star) : json(nullptr)},
                 {"units", rep.units_note}};
        if (prof.s_star && *prof.s_star >= 1 && *prof.s_star <= graph.cn_count()) {
            ldpc::MarkovSpec spec;
            spec.n = graph.vn_count();
            spec.m = graph.cn_count();
            params.bw_cost = rep.bw_cost;
            spec.fail_rate = params.fail_rate();
            spec.repair_rate = ldpc::repair_rate(params);
            spec.p.assign(prof.p.begin(), prof.p.end());
            spec.p.resize(static_cast<std::size_t>(spec.m), 0.0);
            if (spec.p_at(*prof.s_star - 1) < 1.0) {
                double dom = ldpc::mttdl_dominant(spec, *prof.s_star) / rep.stripes;
                j["dominant_mttdl_days"] = dom / ldpc::kSecondsPerDay;
            }
        }
    } else if (scheme == "rs" || scheme == "replication") {
        if (n <= 0 || k <= 0 || k >= n)
            throw ldpc::ConfigError("--scheme " + scheme + " requires --n and --k with n > k > 0");
        if (scheme == "replication" && k != 1)
            throw ldpc::ConfigError("replication uses k = 1 (n copies of one block)");
        params.bw_cost = scheme == "rs" ? static_cast<double>(k) : 1.0;
        ldpc::MarkovSpec spec =
            ldpc::MarkovSpec::mds(n, k, params.fail_rate(), ldpc::repair_rate(params));
        ldpc::MttdlReport rep =
            ldpc::normalize_mttdl(ldpc::mttdl_closed_form(spec), params, n, "mds");
        j = json{{"scheme", scheme},
                 {"n", n},
                 {"k", k},
                 {"stripe_mttdl_days", rep.stripe_mttdl_days()},
                 {"normalized_mttdl_days", rep.normalized_mttdl_days()},
                 {"stripes", rep.stripes},
                 {"method", rep.method},
                 {"bw_cost", rep.bw_cost},
                 {"units", rep.units_note}};
    } else {
        throw ldpc::ConfigError("unknown scheme '" + scheme + "', expected ldpc|rs|replication");
    }
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_compare(const GlobalOpts& g, const std::vector<std::string>& schemes, long long samples,
                int exact_upto, const std::string& out_path) {
    ldpc::CompareOptions opts;
    opts.params = g.params();
    opts.samples = samples;
    opts.exact_upto = exact_upto;
    opts.seed = g.seed;
    opts.threads = g.threads;
    auto rows = ldpc::compare_schemes(schemes, opts);
    if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"scheme", r.scheme},
                               {"storage_overhead", r.storage_overhead},
                               {"repair_bw_overhead", r.repair_bw_overhead},
                               {"mttdl_days", r.mttdl_days},
                               {"source", r.source},
                               {"citation", r.citation}});
        write_output(json{{"rows", arr}, {"meta", meta_json(g)}}.dump(2) + "\n", out_path);
        return 0;
    }
    ldpc::CsvWriter csv({"scheme", "storage_overhead", "repair_bw_overhead", "mttdl_days", "source"});
    for (const auto& r : rows)
        csv.add_row({r.scheme, ldpc::format_double(r.storage_overhead),
                     ldpc::format_double(r.repair_bw_overhead), ldpc::format_double(r.mttdl_days),
                     r.source});
    write_output(csv.str(g.seed, g.config_hash()), out_path);
    return 0;
}

int cmd_lossprob(const GlobalOpts& g, const std::string& alist, const std::string& grid_text,
                 long long trials, int rs_n, int rs_k, const std::string& out_path) {
    ldpc::FactorGraph graph = ldpc::read_alist_file(alist);
    std::vector<double> grid;
    std::stringstream ss(grid_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (...) {
            throw ldpc::ConfigError("bad erasure probability '" + item + "'");
        }
    }
    if (grid.empty()) throw ldpc::ConfigError("empty erasure grid");
    auto rows = ldpc::loss_curve(graph, grid, trials, g.seed, rs_n, rs_k, g.threads);
    if (g.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back(json{{"p", r.p_erase},
                               {"ldpc_loss", r.ldpc_loss},
                               {"ci_lo", r.ci_lo},
                               {"ci_hi", r.ci_hi},
                               {"rs_loss", r.rs_loss},
                               {"rep3_loss", r.rep3_loss}});
        write_output(json{{"rows", arr}, {"meta", meta_json(g)}}.dump(2) + "\n", out_path);
        return 0;
    }
    ldpc::CsvWriter csv({"p", "ldpc_loss", "ci_lo", "ci_hi", "rs_loss", "rep3_loss"});
    for (const auto& r : rows)
        csv.add_row({ldpc::format_double(r.p_erase), ldpc::format_double(r.ldpc_loss),
                     ldpc::format_double(r.ci_lo), ldpc::format_double(r.ci_hi),
                     ldpc::format_double(r.rs_loss), ldpc::format_double(r.rep3_loss)});
    write_output(csv.str(g.seed, g.config_hash()), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDPC code analysis for distributed storage"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (default 0)");
    app.add_option("--threads", g.threads, "worker threads for Monte-Carlo trials")->check(CLI::Range(1, 256));
    app.add_option("--format", g.format, "table output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", g.config_path, "system parameter file (key=value)");

    std::string out_path, alist, lambda_text, rho_text, rate_text, scheme, grid_text;
    std::vector<std::string> schemes;
    int n = 0, m = 0, k = 0, dv = 2, qc = 0, dc = 5, dmax = 16, grid_points = 200;
    int dc_from = 0, dc_to = 0, exact_upto = 3, rs_n = 15, rs_k = 10;
    long long samples = 20000, trials = 100000;
    bool allow_dv1 = false, no_cn_regular = false;
    ldpc::DeConfig de_cfg;

    auto* construct = app.add_subcommand("construct", "build a PEG (optionally QC-lifted) code, emit alist");
    construct->add_option("--n", n, "variable nodes")->required();
    construct->add_option("--m", m, "check nodes")->required();
    construct->add_option("--dv", dv, "VN degree (default 2)");
    construct->add_option("--qc", qc, "circulant size for QC lifting");
    construct->add_flag("--allow-dv1", allow_dv1, "permit degree-1 VNs");
    construct->add_flag("--no-cn-regular", no_cn_regular, "drop the CN-regularity cap");
    construct->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* profile = app.add_subcommand("profile", "erasure-tolerance profile of an alist code");
    profile->add_option("--alist", alist, "parity-check matrix (alist)")->required();
    profile->add_option("--samples", samples, "Monte-Carlo samples per erasure level");
    profile->add_option("--exact-upto", exact_upto, "force exhaustive enumeration through this level");
    profile->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* threshold = app.add_subcommand("threshold", "density-evolution decoding threshold");
    threshold->add_option("--lambda", lambda_text, "edge-perspective VN coefficients, coef:degree pairs")->required();
    threshold->add_option("--rho", rho_text, "edge-perspective CN coefficients, coef:degree pairs")->required();
    threshold->add_option("--max-iter", de_cfg.max_iter, "recursion iteration cap");
    threshold->add_option("--tol", de_cfg.tol, "erased-fraction success tolerance");
    threshold->add_option("--bisect-tol", de_cfg.bisect_tol, "bisection tolerance");
    threshold->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* optimize = app.add_subcommand("optimize", "optimize the VN degree distribution at fixed dc");
    optimize->add_option("--rate", rate_text, "code rate as exact fraction p/q")->required();
    optimize->add_option("--dc", dc, "check node degree")->required();
    optimize->add_option("--dmax", dmax, "largest VN degree considered");
    optimize->add_option("--grid", grid_points, "constraint sample points");
    optimize->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* tradeoff = app.add_subcommand("tradeoff", "repair-bandwidth / threshold tradeoff curve");
    tradeoff->add_option("--rate", rate_text, "code rate as exact fraction p/q")->required();
    tradeoff->add_option("--dc-from", dc_from, "first check degree")->required();
    tradeoff->add_option("--dc-to", dc_to, "last check degree")->required();
    tradeoff->add_option("--dmax", dmax, "largest VN degree considered");
    tradeoff->add_option("--grid", grid_points, "constraint sample points");
    tradeoff->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* mttdl = app.add_subcommand("mttdl", "mean time to data loss of one scheme");
    mttdl->add_option("--scheme", scheme, "ldpc | rs | replication")->required();
    mttdl->add_option("--alist", alist, "parity-check matrix for --scheme ldpc");
    mttdl->add_option("--n", n, "stripe size for rs/replication");
    mttdl->add_option("--k", k, "data blocks for rs/replication");
    mttdl->add_option("--samples", samples, "profiling samples for ldpc");
    mttdl->add_option("--exact-upto", exact_upto, "exhaustive profile levels for ldpc");
    mttdl->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* compare = app.add_subcommand("compare", "side-by-side scheme comparison table");
    compare->add_option("--schemes", schemes, "scheme specs (replicationN, rs_N_K, ldpc:PATH, xorbas_lrc, binary_lrc)")
        ->delimiter(',');
    compare->add_option("--samples", samples, "profiling samples for ldpc schemes");
    compare->add_option("--exact-upto", exact_upto, "exhaustive profile levels for ldpc schemes");
    compare->add_option("--out,-o", out_path, "output file (default stdout)");

    auto* lossprob = app.add_subcommand("lossprob", "data-loss probability curve vs analytic baselines");
    lossprob->add_option("--alist", alist, "parity-check matrix (alist)")->required();
    lossprob->add_option("--grid", grid_text, "comma-separated erasure probabilities")->required();
    lossprob->add_option("--trials", trials, "Monte-Carlo trials per grid point");
    lossprob->add_option("--rs-n", rs_n, "baseline RS stripe size");
    lossprob->add_option("--rs-k", rs_k, "baseline RS data blocks");
    lossprob->add_option("--out,-o", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed())
            return cmd_construct(g, n, m, dv, qc, allow_dv1, no_cn_regular, out_path);
        if (profile->parsed()) return cmd_profile(g, alist, samples, exact_upto, out_path);
        if (threshold->parsed()) return cmd_threshold(g, lambda_text, rho_text, de_cfg, out_path);
        if (optimize->parsed()) return cmd_optimize(g, rate_text, dc, dmax, grid_points, out_path);
        if (tradeoff->parsed())
            return cmd_tradeoff(g, rate_text, dc_from, dc_to, dmax, grid_points, out_path);
        if (mttdl->parsed()) return cmd_mttdl(g, scheme, alist, n, k, samples, exact_upto, out_path);
        if (compare->parsed()) return cmd_compare(g, schemes, samples, exact_upto, out_path);
        if (lossprob->parsed())
            return cmd_lossprob(g, alist, grid_text, trials, rs_n, rs_k, out_path);
    } catch (const ldpc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ldpc::MissingGraphFile& e) {
        std::cerr << "missing graph file: " << e.what() << "\n";
        return 3;
    } catch (const ldpc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
