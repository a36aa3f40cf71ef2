#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ldpc/construct.hpp"
#include "ldpc/peeling.hpp"

using namespace ldpc;

namespace {

// Brute-force: does `erased` contain any stopping subset? (checks peeling
// success independently of the decoder)
bool contains_stopping_subset(const FactorGraph& g, const std::vector<int>& erased) {
    int k = static_cast<int>(erased.size());
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) subset.push_back(erased[static_cast<std::size_t>(i)]);
        if (is_stopping_set(g, subset)) return true;
    }
    return false;
}

// Smallest stopping set by raw enumeration over all subsets of size <= cutoff.
std::optional<int> stopping_number_bruteforce(const FactorGraph& g, int cutoff) {
    int n = g.vn_count();
    std::vector<int> comb;
    for (int w = 1; w <= cutoff; ++w) {
        comb.assign(static_cast<std::size_t>(w), 0);
        for (int i = 0; i < w; ++i) comb[static_cast<std::size_t>(i)] = i;
        for (;;) {
            if (is_stopping_set(g, comb)) return w;
            int i = w - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - w + i) --i;
            if (i < 0) break;
            comb[static_cast<std::size_t>(i)]++;
            for (int j = i + 1; j < w; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

FactorGraph fig_style_graph() {
    // VN5 and VN7 share both their checks; erasing the pair is undecodable
    return FactorGraph::from_parity_rows(
        {{0, 1, 2}, {2, 3, 4}, {4, 5, 7}, {5, 6, 7}, {0, 6, 3}}, 8);
}

} // namespace

TEST_CASE("peeling basics") {
    auto g = fig_style_graph();
    SECTION("empty erasure decodes in zero passes") {
        auto res = peel_decode(g, {});
        CHECK(res.success());
        CHECK(res.iterations == 0);
    }
    SECTION("single erasures always recover") {
        for (int u = 0; u < g.vn_count(); ++u) {
            auto res = peel_decode(g, {u});
            REQUIRE(res.success());
            CHECK(res.recovered == std::vector<int>{u});
        }
    }
    SECTION("pair sharing both checks is stuck") {
        auto res = peel_decode(g, {5, 7});
        REQUIRE_FALSE(res.success());
        CHECK(res.residual == std::vector<int>{5, 7});
        CHECK(is_stopping_set(g, res.residual));
    }
    SECTION("residual is a stopping set and recovery is partial") {
        auto res = peel_decode(g, {1, 5, 7});
        REQUIRE_FALSE(res.success());
        CHECK(res.residual == std::vector<int>{5, 7});
        CHECK(res.recovered == std::vector<int>{1});
    }
}

TEST_CASE("peeling success iff no stopping subset") {
    auto g = construct_code(ConstructionSpec::vn_regular(15, 5, 2, 2));
    SplitMix64 rng(21);
    for (int t = 0; t < 300; ++t) {
        int k = 1 + static_cast<int>(rng.bounded(6));
        auto erased = sample_without_replacement(g.vn_count(), k, rng);
        auto res = peel_decode(g, erased);
        REQUIRE(res.success() == !contains_stopping_subset(g, erased));
        if (!res.success()) REQUIRE(is_stopping_set(g, res.residual));
    }
}

TEST_CASE("stopping number search") {
    SECTION("4-cycle pair gives 2") {
        auto g = FactorGraph::from_parity_rows({{0, 1, 2}, {0, 1}}, 3);
        CHECK(stopping_number_exact(g, 3) == 2);
    }
    SECTION("dv=2 girth-6 graph gives 3") {
        auto g = FactorGraph::from_parity_rows({{0, 1}, {1, 2}, {2, 0}}, 3);
        REQUIRE(girth(g) == 6);
        CHECK(stopping_number_exact(g, 5) == 3);
    }
    SECTION("matches raw enumeration on random graphs") {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto g = construct_code(ConstructionSpec::vn_regular(20, 10, 2, seed));
            auto brute = stopping_number_bruteforce(g, 6);
            CHECK(stopping_number_exact(g, 6) == brute);
        }
    }
    SECTION("cutoff below the stopping number reports nothing") {
        auto g = FactorGraph::from_parity_rows({{0, 1}, {1, 2}, {2, 0}}, 3);
        CHECK_FALSE(stopping_number_exact(g, 2).has_value());
    }
    SECTION("budget is enforced") {
        auto g = construct_code(ConstructionSpec::vn_regular(60, 20, 2, 1));
        StoppingSearchOptions opts;
        opts.node_budget = 10;
        CHECK_THROWS_AS(stopping_number_exact(g, 6, opts), BudgetExceeded);
    }
}

TEST_CASE("tolerance profile exact mode matches independent enumeration") {
    auto g = construct_code(ConstructionSpec::vn_regular(12, 6, 2, 4));
    ProfileOptions opts;
    opts.samples = 10;
    opts.exact_upto = 6; // force full enumeration through level 6
    opts.seed = 1;
    auto prof = tolerance_profile(g, opts);

    // independent recount per level
    for (int w = 1; w <= 6; ++w) {
        long long success = 0, total = 0;
        std::vector<int> comb(static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) comb[static_cast<std::size_t>(i)] = i;
        for (;;) {
            ++total;
            if (peel_decode(g, comb).success()) ++success;
            int i = w - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == 12 - w + i) --i;
            if (i < 0) break;
            comb[static_cast<std::size_t>(i)]++;
            for (int j = i + 1; j < w; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
        REQUIRE(prof.q[static_cast<std::size_t>(w)] ==
                Catch::Approx(static_cast<double>(success) / static_cast<double>(total)).epsilon(1e-14));
    }
    REQUIRE(prof.s_star.has_value());
    CHECK(*prof.s_star == stopping_number_exact(g, 6).value());
    for (std::size_t i = 0; i + 1 < prof.q.size(); ++i) CHECK(prof.q[i + 1] <= prof.q[i]);
    for (int i = 0; i + 2 <= *prof.s_star; ++i) CHECK(prof.p[static_cast<std::size_t>(i)] == 1.0);
    CHECK(prof.p[static_cast<std::size_t>(*prof.s_star - 1)] < 1.0);
}

TEST_CASE("profile q starts at one and p stays within [0,1]") {
    auto g = construct_code(ConstructionSpec::vn_regular(16, 8, 2, 5));
    auto prof = tolerance_profile(g, 2000, 2, 11);
    CHECK(prof.q[0] == 1.0);
    for (double p : prof.p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    REQUIRE(girth(g).value() >= 6); // then p_0 = p_1 = 1
    CHECK(prof.p[0] == 1.0);
    CHECK(prof.p[1] == 1.0);
}

TEST_CASE("monte carlo profile stays within 3 sigma of exact") {
    auto g = construct_code(ConstructionSpec::vn_regular(12, 6, 2, 4));
    ProfileOptions exact_opts;
    exact_opts.exact_upto = 6;
    exact_opts.samples = 10;
    auto exact = tolerance_profile(g, exact_opts);

    ProfileOptions mc_opts;
    mc_opts.samples = 20000;
    mc_opts.exact_upto = 0;
    mc_opts.force_monte_carlo = true;
    mc_opts.seed = 12345;
    auto mc = tolerance_profile(g, mc_opts);

    for (std::size_t i = 1; i < exact.q.size(); ++i) {
        double q = exact.q[i];
        double sigma = std::sqrt(std::max(q * (1.0 - q), 1e-12) / static_cast<double>(mc_opts.samples));
        REQUIRE(std::abs(mc.q[i] - q) <= 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("profile is identical across thread counts") {
    auto g = construct_code(ConstructionSpec::vn_regular(30, 10, 2, 8));
    ProfileOptions a;
    a.samples = 5000;
    a.seed = 77;
    a.force_monte_carlo = true;
    a.threads = 1;
    ProfileOptions b = a;
    b.threads = 4;
    auto pa = tolerance_profile(g, a);
    auto pb = tolerance_profile(g, b);
    CHECK(pa.q == pb.q);
    CHECK(pa.p == pb.p);
}

TEST_CASE("data loss probability endpoints and exhaustive check") {
    auto g = construct_code(ConstructionSpec::vn_regular(8, 4, 2, 6));
    SECTION("p = 0 never loses data") {
        auto est = data_loss_probability(g, 0.0, 500, 1);
        CHECK(est.estimate == 0.0);
    }
    SECTION("p = 1 always loses data when a stopping set exists") {
        REQUIRE(stopping_number_exact(g, 8).has_value());
        auto est = data_loss_probability(g, 1.0, 500, 1);
        CHECK(est.estimate == 1.0);
    }
    SECTION("estimate brackets the exhaustive pattern sum") {
        double p = 0.25;
        double exact = 0.0;
        for (int mask = 0; mask < (1 << 8); ++mask) {
            std::vector<int> erased;
            for (int u = 0; u < 8; ++u)
                if (mask & (1 << u)) erased.push_back(u);
            if (!peel_decode(g, erased).success())
                exact += std::pow(p, erased.size()) * std::pow(1.0 - p, 8 - erased.size());
        }
        auto est = data_loss_probability(g, p, 40000, 99);
        CHECK(est.ci_lo <= exact);
        CHECK(est.ci_hi >= exact);
    }
}

TEST_CASE("data loss estimates are thread-count independent") {
    auto g = construct_code(ConstructionSpec::vn_regular(30, 10, 2, 8));
    auto a = data_loss_probability(g, 0.2, 4000, 5, 1);
    auto b = data_loss_probability(g, 0.2, 4000, 5, 4);
    CHECK(a.estimate == b.estimate);
    CHECK(a.failures == b.failures);
}
