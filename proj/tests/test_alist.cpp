#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ldpc/alist.hpp"
#include "ldpc/construct.hpp"

using namespace ldpc;

TEST_CASE("alist write/read round trip") {
    auto g = construct_code(ConstructionSpec::vn_regular(24, 8, 2, 3));
    std::stringstream ss;
    write_alist(ss, g);
    auto back = read_alist(ss);
    CHECK(back == g);
}

TEST_CASE("alist golden format") {
    auto g = FactorGraph::from_parity_rows({{0, 1, 2}, {0, 3}}, 4);
    std::stringstream ss;
    write_alist(ss, g);
    CHECK(ss.str() ==
          "4 2\n"
          "2 3\n"
          "2 1 1 1\n"
          "3 2\n"
          "1 2\n"
          "1\n"
          "1\n"
          "2\n"
          "1 2 3\n"
          "1 4\n");
}

TEST_CASE("alist reader tolerates zero padding") {
    std::string padded =
        "4 2\n"
        "2 3\n"
        "2 1 1 1\n"
        "3 2\n"
        "1 2\n"
        "1 0\n"
        "1 0\n"
        "2 0\n"
        "1 2 3\n"
        "1 4 0\n";
    std::stringstream ss(padded);
    auto g = read_alist(ss);
    CHECK(g.vn_count() == 4);
    CHECK(g.cn_count() == 2);
    CHECK(g.edge_count() == 5);
    CHECK(g.vn_neighbors(0) == std::vector<int>{0, 1});
}

TEST_CASE("alist reader rejects malformed input") {
    SECTION("truncated") {
        std::stringstream ss("4 2\n2 3\n2 1 1 1\n");
        CHECK_THROWS_AS(read_alist(ss), AlistParseError);
    }
    SECTION("inconsistent halves") {
        std::stringstream ss(
            "4 2\n"
            "2 3\n"
            "2 1 1 1\n"
            "3 2\n"
            "1 2\n1\n1\n2\n"
            "1 2 3\n"
            "2 4\n"); // CN1 claims VN2 instead of VN1
        CHECK_THROWS_AS(read_alist(ss), AlistParseError);
    }
    SECTION("index out of range") {
        std::stringstream ss(
            "4 2\n"
            "2 3\n"
            "2 1 1 1\n"
            "3 2\n"
            "1 9\n1\n1\n2\n"
            "1 2 3\n"
            "1 4\n");
        CHECK_THROWS_AS(read_alist(ss), AlistParseError);
    }
    CHECK_THROWS_AS(read_alist_file("/nonexistent/file.alist"), MissingGraphFile);
}
