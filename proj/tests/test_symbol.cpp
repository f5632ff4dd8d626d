#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "dds/symbol.hpp"
#include "fixtures.hpp"

using dds::DelaneySymbol;
using dds::parse_symbol;
using dds::serialize;

TEST_CASE("parse smallest symbol") {
    DelaneySymbol s = parse_symbol(fixtures::kSquare);
    CHECK(s.size() == 1);
    for (int i = 0; i < 3; ++i) CHECK(s.sigma(i, 1) == 1);
    CHECK(s.m01(1) == 4);
    CHECK(s.m12(1) == 4);
}

TEST_CASE("parse the eight-chamber example") {
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    CHECK(s.size() == 8);
    CHECK(s.sigma(0, 3) == 4);
    CHECK(s.sigma(1, 4) == 6);
    CHECK(s.sigma(2, 1) == 2);
    CHECK(s.m01(1) == 3);
    CHECK(s.m12(4) == 6);
}

TEST_CASE("parse rejects malformed text") {
    CHECK_THROWS_AS(parse_symbol("1:1,1,1:4,4>"), dds::ParseError);
    CHECK_THROWS_AS(parse_symbol("<1:1,1,1:4,4> "), dds::ParseError);
    CHECK_THROWS_AS(parse_symbol("<1:1,1:4,4>"), dds::ParseError);
    CHECK_THROWS_AS(parse_symbol("<2:2 1,2 1,2 1:3  3,5 5>"), dds::ParseError);
}

TEST_CASE("validation failures name the broken invariant") {
    // sigma_0 not an involution
    CHECK_THROWS_WITH_AS(parse_symbol("<2:2 2,2 1,2 1:3 3,5 5>"),
                         doctest::Contains("involution"), dds::ValidationError);
    // disconnected
    CHECK_THROWS_WITH_AS(parse_symbol("<2:1 2,1 2,1 2:3 3,3 3>"),
                         doctest::Contains("disconnected"), dds::ValidationError);
    // m below 3
    CHECK_THROWS_WITH_AS(parse_symbol("<1:1,1,1:2,4>"), doctest::Contains("below 3"),
                         dds::ValidationError);
    // m not constant on a component
    CHECK_THROWS_WITH_AS(parse_symbol("<2:2 1,1 2,1 2:4 6,4 4>"), doctest::Contains("constant"),
                         dds::ValidationError);
    // sigma_0 sigma_2 orbit longer than 2
    CHECK_THROWS_WITH_AS(parse_symbol("<4:2 1 4 3,1 2 3 4,1 4 3 2:4 4 4 4,4 4 4 4>"),
                         doctest::Contains("orbit"), dds::ValidationError);
    // r does not divide m
    CHECK_THROWS_WITH_AS(parse_symbol("<2:1 2,1 2,2 1:3 3,3 3>"), doctest::Contains("divide"),
                         dds::ValidationError);
}

TEST_CASE("serialize round-trips node-for-node") {
    for (const char* text : {fixtures::kSquare, fixtures::kS8, fixtures::kDouble44}) {
        DelaneySymbol s = parse_symbol(text);
        CHECK(serialize(s) == text);
        CHECK(parse_symbol(serialize(s)) == s);
    }
}

TEST_CASE("serialize is idempotent through parse") {
    std::mt19937 rng(7);
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    for (int k = 0; k < 20; ++k) {
        DelaneySymbol r = fixtures::random_relabel(s, rng);
        CHECK(serialize(parse_symbol(serialize(r))) == serialize(r));
    }
}

TEST_CASE("components of the eight-chamber example") {
    DelaneySymbol s = parse_symbol(fixtures::kS8);

    auto c01 = components(s, 0, 1);
    REQUIRE(c01.size() == 3);
    CHECK(c01[0].nodes == std::vector<int>{1});
    CHECK(c01[0].r == 1);
    CHECK(c01[0].v == 3);
    CHECK(c01[0].chain);
    CHECK(c01[1].nodes == std::vector<int>{2, 3, 4, 6});
    CHECK(c01[1].r == 4);
    CHECK(c01[1].v == 1);
    CHECK(c01[2].nodes == std::vector<int>{5, 7, 8});
    CHECK(c01[2].r == 3);
    CHECK(c01[2].v == 1);

    auto c12 = components(s, 1, 2);
    REQUIRE(c12.size() == 2);
    CHECK(c12[0].nodes == std::vector<int>{1, 2, 3, 5});
    CHECK(c12[0].r == 4);
    CHECK(c12[0].v == 1);
    CHECK(c12[0].chain);
    CHECK(c12[1].nodes == std::vector<int>{4, 6, 7, 8});
    CHECK(c12[1].r == 2);
    CHECK(c12[1].v == 3);
    CHECK_FALSE(c12[1].chain);
}

TEST_CASE("size-1 components have r = 1 and v = m") {
    DelaneySymbol s = parse_symbol(fixtures::size1(5, 3));
    for (auto [ci, cj, v] : {std::tuple{0, 1, 5}, std::tuple{1, 2, 3}, std::tuple{0, 2, 2}}) {
        auto comps = components(s, ci, cj);
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].r == 1);
        CHECK(comps[0].v == v);
        CHECK(comps[0].chain);
    }
}

TEST_CASE("complexity is the node count") {
    CHECK(dds::complexity(parse_symbol(fixtures::kSquare)) == 1);
    CHECK(dds::complexity(parse_symbol(fixtures::kS8)) == 8);
}

TEST_CASE("canonical graph trace matches the known ordered traversal") {
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    CHECK(dds::canonical_graph_trace(s) ==
          "1,1,2; 2,3,1; 4,2,5; 3,6,7; 7,5,3; 6,4,8; 5,8,4; 8,7,6");
    CHECK(dds::canonical_graph_trace(parse_symbol(fixtures::kSquare)) == "1,1,1");
}

TEST_CASE("canonical trace is invariant under relabeling") {
    std::mt19937 rng(11);
    for (const char* text : {fixtures::kS8, fixtures::kDouble44}) {
        DelaneySymbol s = parse_symbol(text);
        std::string trace = dds::canonical_trace(s);
        for (int k = 0; k < 100; ++k)
            CHECK(dds::canonical_trace(fixtures::random_relabel(s, rng)) == trace);
    }
}

TEST_CASE("canonical form serializes with canonical numbering") {
    std::mt19937 rng(3);
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    std::string canon = serialize(dds::canonical_form(s));
    for (int k = 0; k < 25; ++k)
        CHECK(serialize(dds::canonical_form(fixtures::random_relabel(s, rng))) == canon);
}

TEST_CASE("isomorphism") {
    std::mt19937 rng(5);
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    CHECK(dds::is_isomorphic(s, fixtures::random_relabel(s, rng)));
    CHECK_FALSE(dds::is_isomorphic(parse_symbol(fixtures::size1(3, 6)),
                                   parse_symbol(fixtures::size1(6, 3))));
    CHECK(dds::is_isomorphic(parse_symbol(fixtures::kSquare), parse_symbol(fixtures::kSquare)));
}

TEST_CASE("dual swaps tile and vertex data") {
    CHECK(serialize(dds::dual(parse_symbol(fixtures::size1(3, 6)))) == fixtures::size1(6, 3));
    CHECK(serialize(dds::dual(parse_symbol(fixtures::kSquare))) == fixtures::kSquare);
    DelaneySymbol s = parse_symbol(fixtures::kS8);
    CHECK(dds::is_isomorphic(dds::dual(dds::dual(s)), s));
    CHECK(dds::complexity(dds::dual(s)) == dds::complexity(s));
}

TEST_CASE("minimal image") {
    DelaneySymbol dbl = parse_symbol(fixtures::kDouble44);
    DelaneySymbol m = dds::minimal_image(dbl);
    CHECK(m.size() == 1);
    CHECK(serialize(m) == fixtures::kSquare);

    DelaneySymbol s8 = parse_symbol(fixtures::kS8);
    CHECK(dds::minimal_image(s8).size() == 8);

    DelaneySymbol one = parse_symbol(fixtures::size1(3, 7));
    CHECK(dds::minimal_image(one) == one);
}

TEST_CASE("minimal image is idempotent and divides the size") {
    std::mt19937 rng(13);
    for (const char* text : {fixtures::kS8, fixtures::kDouble44, fixtures::kSquare}) {
        DelaneySymbol s = parse_symbol(text);
        DelaneySymbol m = dds::minimal_image(s);
        CHECK(dds::is_isomorphic(dds::minimal_image(m), m));
        CHECK(s.size() % m.size() == 0);
        DelaneySymbol r = fixtures::random_relabel(s, rng);
        CHECK(dds::is_isomorphic(dds::minimal_image(r), m));
    }
}
