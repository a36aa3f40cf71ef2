#pragma once

#include <cmath>
#include <map>
#include <string>

#include "ldpc/errors.hpp"
#include "ldpc/factor_graph.hpp"

namespace ldpc {

/// Edge-perspective degree distribution pair: lambda_d (resp. rho_d) is the
/// fraction of edges incident to degree-d variable (resp. check) nodes.
/// Degree 1 is representable; practical code constructors enforce d >= 2
/// separately.
class DegreeDistribution {
public:
    using Coeffs = std::map<int, double>;

    static DegreeDistribution from_edge_perspective(Coeffs lambda, Coeffs rho) {
        validate(lambda, "lambda");
        validate(rho, "rho");
        return DegreeDistribution(std::move(lambda), std::move(rho));
    }

    /// Same, but rescales each side to sum exactly to 1 first. Accepts input
    /// rounded to a few decimals (printed tables) as long as it is within
    /// 1e-3 of a distribution.
    static DegreeDistribution from_edge_perspective_normalized(Coeffs lambda, Coeffs rho) {
        normalize(lambda, "lambda");
        normalize(rho, "rho");
        return from_edge_perspective(std::move(lambda), std::move(rho));
    }

    /// Node-perspective input: Lambda_d / P_d are fractions of VNs / CNs with
    /// degree d. Converted via lambda_d = d*Lambda_d / sum_e e*Lambda_e.
    static DegreeDistribution from_node_perspective(const Coeffs& vn_fractions, const Coeffs& cn_fractions) {
        return from_edge_perspective(node_to_edge(vn_fractions, "Lambda"), node_to_edge(cn_fractions, "P"));
    }

    static DegreeDistribution regular(int dv, int dc) {
        if (dv < 1 || dc < 1) throw InvalidDistribution("regular degrees must be >= 1");
        return from_edge_perspective({{dv, 1.0}}, {{dc, 1.0}});
    }

    const Coeffs& lambda() const { return lambda_; }
    const Coeffs& rho() const { return rho_; }

    /// lambda(x) = sum_d lambda_d x^(d-1)
    double lambda_eval(double x) const { return eval(lambda_, x); }
    double rho_eval(double x) const { return eval(rho_, x); }

    /// sum_d lambda_d / d  (the integral of lambda from 0 to 1)
    double lambda_inv_moment() const { return inv_moment(lambda_); }
    double rho_inv_moment() const { return inv_moment(rho_); }

    /// Node-perspective views: Lambda_d = (lambda_d/d) / sum_e lambda_e/e.
    Coeffs vn_node_perspective() const { return edge_to_node(lambda_); }
    Coeffs cn_node_perspective() const { return edge_to_node(rho_); }

private:
    DegreeDistribution(Coeffs lambda, Coeffs rho) : lambda_(std::move(lambda)), rho_(std::move(rho)) {}

    static void validate(const Coeffs& c, const char* name) {
        if (c.empty()) throw InvalidDistribution(std::string(name) + " is empty");
        double sum = 0.0;
        for (auto [d, v] : c) {
            if (d < 1) throw InvalidDistribution(std::string(name) + " has degree < 1");
            if (v < -1e-12 || v > 1.0 + 1e-9)
                throw InvalidDistribution(std::string(name) + "_" + std::to_string(d) + " outside [0,1]");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw InvalidDistribution(std::string(name) + " coefficients sum to " + std::to_string(sum));
    }

    static void normalize(Coeffs& c, const char* name) {
        double sum = 0.0;
        for (auto [d, v] : c) sum += v;
        if (sum <= 0.0) throw InvalidDistribution(std::string(name) + " has nonpositive total");
        if (std::abs(sum - 1.0) > 1e-3)
            throw InvalidDistribution(std::string(name) + " sums to " + std::to_string(sum) + ", too far from 1 to normalize");
        for (auto& [d, v] : c) v /= sum;
    }

    static double eval(const Coeffs& c, double x) {
        double acc = 0.0;
        for (auto [d, v] : c) acc += v * std::pow(x, d - 1);
        return acc;
    }

    static double inv_moment(const Coeffs& c) {
        double acc = 0.0;
        for (auto [d, v] : c) acc += v / static_cast<double>(d);
        return acc;
    }

    static Coeffs edge_to_node(const Coeffs& edge) {
        double total = inv_moment(edge);
        if (total <= 0.0) throw ZeroDenominator("degenerate distribution: sum of coeff/d is zero");
        Coeffs node;
        for (auto [d, v] : edge)
            if (v > 0.0) node[d] = (v / static_cast<double>(d)) / total;
        return node;
    }

    static Coeffs node_to_edge(const Coeffs& node, const char* name) {
        double total = 0.0;
        for (auto [d, v] : node) {
            if (d < 1) throw InvalidDistribution(std::string(name) + " has degree < 1");
            total += v * static_cast<double>(d);
        }
        if (total <= 0.0) throw ZeroDenominator("degenerate node distribution");
        Coeffs edge;
        for (auto [d, v] : node)
            if (v > 0.0) edge[d] = v * static_cast<double>(d) / total;
        return edge;
    }

    Coeffs lambda_;
    Coeffs rho_;
};

/// Edge-perspective profile of a concrete graph.
inline DegreeDistribution degree_profile(const FactorGraph& g) {
    std::map<int, long long> vn_deg_count, cn_deg_count;
    for (int u = 0; u < g.vn_count(); ++u) vn_deg_count[g.vn_degree(u)]++;
    for (int r = 0; r < g.cn_count(); ++r) cn_deg_count[g.cn_degree(r)]++;
    const double E = static_cast<double>(g.edge_count());
    DegreeDistribution::Coeffs lambda, rho;
    for (auto [d, c] : vn_deg_count) lambda[d] = static_cast<double>(d) * static_cast<double>(c) / E;
    for (auto [d, c] : cn_deg_count) rho[d] = static_cast<double>(d) * static_cast<double>(c) / E;
    return DegreeDistribution::from_edge_perspective(std::move(lambda), std::move(rho));
}

/// Design rate 1 - (sum rho_d/d)/(sum lambda_d/d); equals 1 - m/n for a
/// profile taken from a graph, assuming full-rank H.
inline double design_rate(const DegreeDistribution& dd) {
    double lam = dd.lambda_inv_moment();
    if (lam <= 0.0) throw ZeroDenominator("sum of lambda_d/d is zero");
    return 1.0 - dd.rho_inv_moment() / lam;
}

/// Average VN degree 1 / (sum lambda_d/d).
inline double average_vn_degree(const DegreeDistribution& dd) {
    double lam = dd.lambda_inv_moment();
    if (lam <= 0.0) throw ZeroDenominator("sum of lambda_d/d is zero");
    return 1.0 / lam;
}

} // namespace ldpc
