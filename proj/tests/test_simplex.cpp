#include <catch2/catch_amalgamated.hpp>

#include "ldpc/simplex.hpp"

using namespace ldpc;

TEST_CASE("simple maximization with inequality constraints") {
    // max x + y st x + 2y <= 4, 3x + y <= 6
    LpProblem p;
    p.num_vars = 2;
    p.objective = {1.0, 1.0};
    p.ub_a = {{1.0, 2.0}, {3.0, 1.0}};
    p.ub_b = {4.0, 6.0};
    auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Catch::Approx(1.6));
    CHECK(r.x[1] == Catch::Approx(1.2));
    CHECK(r.objective == Catch::Approx(2.8));
}

TEST_CASE("equality constraints") {
    // max x st x + y = 1, x <= 0.3
    LpProblem p;
    p.num_vars = 2;
    p.objective = {1.0, 0.0};
    p.eq_a = {{1.0, 1.0}};
    p.eq_b = {1.0};
    p.ub_a = {{1.0, 0.0}};
    p.ub_b = {0.3};
    auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Catch::Approx(0.3));
    CHECK(r.x[1] == Catch::Approx(0.7));
}

TEST_CASE("infeasible system is reported") {
    // x + y = 2 with x + y <= 1
    LpProblem p;
    p.num_vars = 2;
    p.objective = {1.0, 0.0};
    p.eq_a = {{1.0, 1.0}};
    p.eq_b = {2.0};
    p.ub_a = {{1.0, 1.0}};
    p.ub_b = {1.0};
    auto r = solve_lp(p);
    CHECK(r.status == LpStatus::Infeasible);
}

TEST_CASE("unbounded objective is reported") {
    LpProblem p;
    p.num_vars = 2;
    p.objective = {1.0, 0.0};
    p.ub_a = {{0.0, 1.0}};
    p.ub_b = {1.0};
    auto r = solve_lp(p);
    CHECK(r.status == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand sides are handled") {
    // max -x st -x <= -2  (i.e., x >= 2)
    LpProblem p;
    p.num_vars = 1;
    p.objective = {-1.0};
    p.ub_a = {{-1.0}};
    p.ub_b = {-2.0};
    auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[0] == Catch::Approx(2.0));
}

TEST_CASE("redundant equalities do not break the solve") {
    // x + y = 1 stated twice
    LpProblem p;
    p.num_vars = 2;
    p.objective = {0.0, 1.0};
    p.eq_a = {{1.0, 1.0}, {1.0, 1.0}};
    p.eq_b = {1.0, 1.0};
    auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x[1] == Catch::Approx(1.0));
}

TEST_CASE("degenerate vertices terminate (Bland)") {
    LpProblem p;
    p.num_vars = 3;
    p.objective = {0.75, -150.0, 0.02};
    p.ub_a = {{0.25, -60.0, -0.04}, {0.5, -90.0, -0.02}, {0.0, 0.0, 1.0}};
    p.ub_b = {0.0, 0.0, 1.0};
    auto r = solve_lp(p);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.objective >= 0.0);
}
