#include <catch2/catch_amalgamated.hpp>

#include "ldpc/degree_distribution.hpp"
#include "ldpc/factor_graph.hpp"
#include "ldpc/rng.hpp"

using namespace ldpc;

TEST_CASE("degree profile of regular and irregular graphs") {
    SECTION("(2,4)-regular graph: lambda(x)=x, rho(x)=x^3") {
        auto g = FactorGraph::from_parity_rows({{0, 1, 2, 3}, {0, 1, 2, 3}}, 4);
        auto dd = degree_profile(g);
        REQUIRE(dd.lambda().size() == 1);
        CHECK(dd.lambda().at(2) == 1.0);
        REQUIRE(dd.rho().size() == 1);
        CHECK(dd.rho().at(4) == 1.0);
    }
    SECTION("VN degrees {2,2,3} over E=7: lambda_2=4/7, lambda_3=3/7") {
        auto g = FactorGraph::from_parity_rows({{0, 1, 2}, {0, 2}, {1, 2}}, 3);
        REQUIRE(g.edge_count() == 7);
        auto dd = degree_profile(g);
        CHECK(dd.lambda().at(2) == Catch::Approx(4.0 / 7.0).epsilon(1e-14));
        CHECK(dd.lambda().at(3) == Catch::Approx(3.0 / 7.0).epsilon(1e-14));
    }
    SECTION("CN degrees {4,2} over E=6: rho_2=2/6, rho_4=4/6") {
        auto g = FactorGraph::from_parity_rows({{0, 1, 2, 3}, {0, 1}}, 4);
        auto dd = degree_profile(g);
        CHECK(dd.rho().at(2) == Catch::Approx(2.0 / 6.0).epsilon(1e-14));
        CHECK(dd.rho().at(4) == Catch::Approx(4.0 / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("design rate") {
    CHECK(design_rate(DegreeDistribution::regular(2, 4)) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(design_rate(DegreeDistribution::regular(2, 6)) == Catch::Approx(2.0 / 3.0).epsilon(1e-14));

    // published rate-1/2 design: 0.5496x + 0.1549x^2 + 0.2956x^3 with rho = x^4
    auto dd = DegreeDistribution::from_edge_perspective_normalized(
        {{2, 0.5496}, {3, 0.1549}, {4, 0.2956}}, {{5, 1.0}});
    CHECK(design_rate(dd) == Catch::Approx(0.5).margin(1e-3));
}

TEST_CASE("average VN degree") {
    CHECK(average_vn_degree(DegreeDistribution::regular(2, 4)) == Catch::Approx(2.0));
    auto dd = DegreeDistribution::from_edge_perspective_normalized(
        {{2, 0.5496}, {3, 0.1549}, {4, 0.2956}}, {{5, 1.0}});
    CHECK(average_vn_degree(dd) == Catch::Approx(2.4997).margin(1e-3));
    auto half = DegreeDistribution::from_edge_perspective({{2, 0.5}, {4, 0.5}}, {{6, 1.0}});
    CHECK(average_vn_degree(half) == Catch::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(DegreeDistribution::from_edge_perspective({{2, 0.9}}, {{6, 1.0}}),
                    InvalidDistribution);
    CHECK_THROWS_AS(DegreeDistribution::from_edge_perspective({{0, 1.0}}, {{6, 1.0}}),
                    InvalidDistribution);
    CHECK_THROWS_AS(DegreeDistribution::from_edge_perspective({{2, 1.5}, {3, -0.5}}, {{6, 1.0}}),
                    InvalidDistribution);
    // degree 1 is representable
    auto dd = DegreeDistribution::from_edge_perspective({{1, 0.25}, {2, 0.75}}, {{4, 1.0}});
    CHECK(dd.lambda().at(1) == 0.25);
}

TEST_CASE("node perspective round trip is the identity") {
    SplitMix64 rng(5);
    for (int t = 0; t < 100; ++t) {
        DegreeDistribution::Coeffs lambda;
        int terms = 1 + static_cast<int>(rng.bounded(5));
        double total = 0.0;
        for (int i = 0; i < terms; ++i) {
            int d = 2 + static_cast<int>(rng.bounded(15));
            double w = 0.05 + rng.unit_real();
            lambda[d] += w;
            total += w;
        }
        for (auto& [d, v] : lambda) v /= total;
        auto dd = DegreeDistribution::from_edge_perspective(lambda, {{6, 1.0}});
        auto node = dd.vn_node_perspective();
        double node_sum = 0.0;
        for (auto [d, v] : node) node_sum += v;
        REQUIRE(node_sum == Catch::Approx(1.0).epsilon(1e-12));
        auto back = DegreeDistribution::from_node_perspective(node, dd.cn_node_perspective());
        for (auto [d, v] : lambda)
            REQUIRE(back.lambda().at(d) == Catch::Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("graph-derived rate equals 1 - m/n") {
    SplitMix64 rng(11);
    for (int t = 0; t < 100; ++t) {
        int n = 3 + static_cast<int>(rng.bounded(80));
        int m = 1 + static_cast<int>(rng.bounded(std::max(1, n - 2)));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u) {
            int deg = 1 + static_cast<int>(rng.bounded(std::min(3, m)));
            for (int r : sample_without_replacement(m, deg, rng)) edges.emplace_back(u, r);
        }
        auto g = FactorGraph::from_edges(n, m, std::move(edges));
        double want = 1.0 - static_cast<double>(m) / static_cast<double>(n);
        REQUIRE(design_rate(degree_profile(g)) == Catch::Approx(want).margin(1e-12));
    }
}
