#include <catch2/catch_amalgamated.hpp>

#include "ldpc/ddopt.hpp"

using namespace ldpc;

namespace {

OptProblem problem(const Rational& rate, int dc, int dmax = 16) {
    OptProblem p;
    p.rate = rate;
    p.dc = dc;
    p.d_max = dmax;
    return p;
}

void check_lambda_contract(const DegreeDistribution::Coeffs& lambda, const OptProblem& p,
                           double eps) {
    double sum = 0.0, inv = 0.0;
    for (auto [d, v] : lambda) {
        REQUIRE(d >= 2);
        REQUIRE(d <= p.d_max);
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0 + 1e-9);
        sum += v;
        inv += v / static_cast<double>(d);
    }
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(inv == Catch::Approx(p.required_inv_moment()).margin(1e-7));
    auto dd = DegreeDistribution::from_edge_perspective(lambda, {{p.dc, 1.0}});
    REQUIRE(de_iterate(dd, eps, p.de).success);
}

} // namespace

TEST_CASE("rate-impossible combinations are rejected") {
    // R=1/2, dc=3 needs sum lambda_d/d = 2/3 > 1/2
    CHECK_THROWS_AS(feasible_lambda(problem(Rational(1, 2), 3), 0.3), RateImpossible);
    CHECK_THROWS_AS(optimize_threshold(problem(Rational(1, 2), 3)), RateImpossible);
    // too small for the degree window: R=1/2, dc=40 needs 1/20 < 1/16
    CHECK_THROWS_AS(optimize_threshold(problem(Rational(1, 2), 40)), RateImpossible);
}

TEST_CASE("rate equality pinning lambda to x") {
    // R=2/3, dc=6: required sum = 1/2, only lambda_2 = 1 reaches it
    auto f = feasible_lambda(problem(Rational(2, 3), 6), 0.19);
    REQUIRE(f.lambda.has_value());
    REQUIRE(f.lambda->size() == 1);
    CHECK(f.lambda->at(2) == Catch::Approx(1.0));
    // 0.19 < 1/5 = analytic threshold of (2,6)
    check_lambda_contract(*f.lambda, problem(Rational(2, 3), 6), 0.19);

    // above the analytic threshold nothing can work
    auto bad = feasible_lambda(problem(Rational(2, 3), 6), 0.21);
    CHECK_FALSE(bad.lambda.has_value());
}

TEST_CASE("feasible lambda near the published rate-1/2 design point") {
    // dc = 5 (gamma = 4): the published design reaches scaled 0.91, eps = 0.455
    auto p = problem(Rational(1, 2), 5, 4);
    auto f = feasible_lambda(p, 0.45);
    REQUIRE(f.lambda.has_value());
    check_lambda_contract(*f.lambda, p, 0.45);
}

TEST_CASE("optimize_threshold reproduces published design points") {
    SECTION("R=1/2, dc=5, degrees up to 4: scaled 0.9100, dv 2.50") {
        auto r = optimize_threshold(problem(Rational(1, 2), 5, 4));
        CHECK(r.scaled == Catch::Approx(0.9100).margin(0.02));
        CHECK(r.dv == Catch::Approx(2.50).margin(0.05));
        check_lambda_contract(r.lambda, problem(Rational(1, 2), 5, 4), r.epsilon_star);
    }
    SECTION("R=3/4, dc=9, degrees up to 3: scaled 0.7480, dv 2.25") {
        auto r = optimize_threshold(problem(Rational(3, 4), 9, 3));
        CHECK(r.scaled == Catch::Approx(0.7480).margin(0.02));
        CHECK(r.dv == Catch::Approx(2.25).margin(0.05));
    }
    SECTION("dmax=2 with dc = 2/(1-R) returns lambda = x at the analytic threshold") {
        auto r = optimize_threshold(problem(Rational(1, 2), 4, 2));
        REQUIRE(r.lambda.size() == 1);
        CHECK(r.lambda.at(2) == Catch::Approx(1.0));
        CHECK(r.epsilon_star == Catch::Approx(1.0 / 3.0).margin(2e-3));
    }
}

TEST_CASE("tradeoff curve is monotone and flags impossible rows") {
    auto rows = tradeoff_curve(Rational(1, 2), 3, 7, problem(Rational(1, 2), 5, 16));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].rate_impossible); // dc = 3
    double prev = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE_FALSE(rows[i].rate_impossible);
        CHECK(rows[i].scaled >= prev - 1e-6);
        prev = rows[i].scaled;
        CHECK(rows[i].gamma == rows[i].dc - 1);
    }
    // dc = 4 pins lambda = x; dc = 7 with degrees to 16 reaches the published 0.984
    CHECK(rows[1].scaled == Catch::Approx(2.0 / 3.0).margin(5e-3));
    CHECK(rows[4].scaled >= 0.964);
    CHECK(rows[4].scaled <= 1.0 + 1e-6);
}

TEST_CASE("empty tradeoff range gives empty table") {
    auto rows = tradeoff_curve(Rational(1, 2), 6, 5);
    CHECK(rows.empty());
}
