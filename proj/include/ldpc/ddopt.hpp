#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ldpc/degree_distribution.hpp"
#include "ldpc/density_evolution.hpp"
#include "ldpc/errors.hpp"
#include "ldpc/rational.hpp"
#include "ldpc/simplex.hpp"

namespace ldpc {

/// VN degree-distribution design problem for a CN-regular code:
/// rho(x) = x^(dc-1), variables lambda_2..lambda_dmax.
struct OptProblem {
    Rational rate{1, 2};
    int dc = 5;
    int d_max = 16;
    int grid_points = 200;
    double margin = 1e-6; // relative slack per grid point, emulating the strict inequality
    DeConfig de{};

    /// Rate constraint pins sum lambda_d/d to this value.
    double required_inv_moment() const {
        return 1.0 / ((1.0 - rate.value()) * static_cast<double>(dc));
    }

    void check_valid() const {
        if (rate.num() <= 0 || rate.num() >= rate.den())
            throw InvalidRate("rate must satisfy 0 < R < 1, got " + rate.str());
        if (dc < 2) throw ConfigError("dc must be >= 2");
        if (d_max < 2) throw ConfigError("d_max must be >= 2");
        if (grid_points < 50) throw ConfigError("grid_points must be >= 50");
        if (margin < 0.0) throw ConfigError("margin must be >= 0");
    }

    /// Throws when the pinned sum lambda_d/d is outside what degrees in
    /// [2, d_max] can reach (mass at d=2 gives the maximum 1/2, mass at
    /// d_max the minimum).
    void check_rate_possible() const {
        check_valid();
        double c = required_inv_moment();
        if (c > 0.5 + 1e-12)
            throw RateImpossible("rate constraint needs sum lambda_d/d = " + std::to_string(c) +
                                 " > 1/2, unreachable with degrees >= 2");
        if (c < 1.0 / static_cast<double>(d_max) - 1e-12)
            throw RateImpossible("rate constraint needs sum lambda_d/d = " + std::to_string(c) +
                                 " < 1/d_max, unreachable with degrees <= " + std::to_string(d_max));
    }
};

struct LambdaFeasibility {
    std::optional<DegreeDistribution::Coeffs> lambda;
    double slack = 0.0;            // worst-case grid slack of the returned point
    std::string infeasibility;     // populated when lambda is empty
};

/// Feasibility in lambda at a fixed erasure probability: simplex over the
/// rate equality, the normalization, and the sampled successful-decoding
/// constraint eps*lambda(1-(1-x)^(dc-1)) <= x on (0, eps]. The LP maximizes
/// the uniform slack so the winner sits in the interior of the grid
/// constraints, then the exact recursion re-validates it.
inline LambdaFeasibility feasible_lambda(const OptProblem& p, double epsilon) {
    p.check_rate_possible();
    if (epsilon <= 0.0 || epsilon >= 1.0) throw Error("epsilon must be inside (0,1)");

    const int ndeg = p.d_max - 1;   // lambda_2..lambda_dmax
    const int nv = ndeg + 1;        // plus uniform slack t
    const int G = p.grid_points;

    LpProblem lp;
    lp.num_vars = nv;
    lp.objective.assign(nv, 0.0);
    lp.objective[ndeg] = 1.0; // maximize t

    std::vector<double> ones(nv, 1.0), inv(nv, 0.0);
    ones[ndeg] = 0.0;
    for (int d = 2; d <= p.d_max; ++d) inv[d - 2] = 1.0 / static_cast<double>(d);
    lp.eq_a.push_back(ones);
    lp.eq_b.push_back(1.0);
    lp.eq_a.push_back(inv);
    lp.eq_b.push_back(p.required_inv_moment());

    for (int j = 1; j <= G; ++j) {
        double x = epsilon * static_cast<double>(j) / static_cast<double>(G);
        double y = 1.0 - std::pow(1.0 - x, p.dc - 1);
        std::vector<double> row(nv, 0.0);
        double ypow = 1.0;
        for (int d = 2; d <= p.d_max; ++d) {
            ypow *= y; // y^(d-1)
            row[d - 2] = epsilon * ypow;
        }
        row[ndeg] = 1.0;
        lp.ub_a.push_back(std::move(row));
        lp.ub_b.push_back(x * (1.0 - p.margin));
    }

    LpResult sol = solve_lp(lp);
    LambdaFeasibility out;
    if (sol.status != LpStatus::Optimal) {
        int row = sol.infeasible_row;
        if (row < 0)
            out.infeasibility = "infeasible";
        else if (row < 2)
            out.infeasibility = row == 0 ? "normalization sum lambda_d = 1" : "rate equality sum lambda_d/d";
        else {
            double x = epsilon * static_cast<double>(row - 1) / static_cast<double>(G);
            out.infeasibility = "decoding constraint at x = " + std::to_string(x);
        }
        return out;
    }

    DegreeDistribution::Coeffs lambda;
    for (int d = 2; d <= p.d_max; ++d) {
        double v = sol.x[static_cast<std::size_t>(d - 2)];
        if (v > 1e-12) lambda[d] = v;
    }
    if (lambda.empty()) {
        out.infeasibility = "solver returned the zero vector";
        return out;
    }
    // kill the exact constraint drift from dropped near-zero entries
    double sum = 0.0;
    for (auto [d, v] : lambda) sum += v;
    for (auto& [d, v] : lambda) v /= sum;

    auto dd = DegreeDistribution::from_edge_perspective(lambda, {{p.dc, 1.0}});
    if (!de_iterate(dd, epsilon, p.de).success) {
        out.infeasibility = "grid point passed but full recursion stalls at eps = " + std::to_string(epsilon);
        return out;
    }
    out.lambda = std::move(lambda);
    out.slack = sol.objective;
    return out;
}

struct OptimizeResult {
    double epsilon_star = 0.0;
    double scaled = 0.0; // epsilon_star / (1 - R)
    DegreeDistribution::Coeffs lambda;
    double dv = 0.0;
};

/// Largest erasure probability admitting a feasible lambda, by bisection to
/// 1e-4, returning the witnessing distribution and its average VN degree.
inline OptimizeResult optimize_threshold(const OptProblem& p) {
    p.check_rate_possible();
    const double step_tol = 1e-4;

    double lo = 1e-4;
    LambdaFeasibility witness = feasible_lambda(p, lo);
    if (!witness.lambda)
        throw RateImpossible("no feasible lambda even at eps = " + std::to_string(lo) + ": " + witness.infeasibility);
    double hi = 1.0 - 1e-9;
    LambdaFeasibility at_hi = feasible_lambda(p, hi);
    if (at_hi.lambda) {
        witness = at_hi;
        lo = hi;
    }
    while (hi - lo > step_tol) {
        double mid = 0.5 * (lo + hi);
        LambdaFeasibility f = feasible_lambda(p, mid);
        if (f.lambda) {
            witness = f;
            lo = mid;
        } else {
            hi = mid;
        }
    }

    OptimizeResult out;
    out.epsilon_star = lo;
    out.scaled = lo / (1.0 - p.rate.value());
    out.lambda = *witness.lambda;
    double inv_moment = 0.0;
    for (auto [d, v] : out.lambda) inv_moment += v / static_cast<double>(d);
    out.dv = 1.0 / inv_moment;
    return out;
}

struct TradeoffRow {
    int dc = 0;
    int gamma = 0; // dc - 1
    bool rate_impossible = false;
    double epsilon_star = 0.0;
    double scaled = 0.0;
    double dv = 0.0;
    DegreeDistribution::Coeffs lambda;
};

/// One optimized row per check degree in [dc_from, dc_to]; rows whose rate
/// equality cannot be met are retained with the flag set.
inline std::vector<TradeoffRow> tradeoff_curve(const Rational& rate, int dc_from, int dc_to,
                                               const OptProblem& base = {}) {
    std::vector<TradeoffRow> rows;
    for (int dc = dc_from; dc <= dc_to; ++dc) {
        OptProblem p = base;
        p.rate = rate;
        p.dc = dc;
        TradeoffRow row;
        row.dc = dc;
        row.gamma = dc - 1;
        try {
            OptimizeResult r = optimize_threshold(p);
            row.epsilon_star = r.epsilon_star;
            row.scaled = r.scaled;
            row.dv = r.dv;
            row.lambda = std::move(r.lambda);
        } catch (const RateImpossible&) {
            row.rate_impossible = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ldpc
