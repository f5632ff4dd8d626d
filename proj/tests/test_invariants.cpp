#include <doctest.h>

#include <random>

#include "dds/invariants.hpp"
#include "dds/orbifold.hpp"
#include "fixtures.hpp"

using dds::DelaneySymbol;
using dds::GeometryKind;
using dds::parse_symbol;
using dds::Rational;

TEST_CASE("curvature values") {
    CHECK(dds::curvature(parse_symbol(fixtures::size1(4, 4))) == Rational(0));
    CHECK(dds::curvature(parse_symbol(fixtures::size1(5, 3))) == Rational(1, 30));
    CHECK(dds::curvature(parse_symbol(fixtures::kS8)) == Rational(0));
    CHECK(dds::curvature(parse_symbol(fixtures::size1(4, 5))) == Rational(-1, 20));
}

TEST_CASE("geometry from the curvature sign") {
    CHECK(dds::geometry_of(parse_symbol(fixtures::size1(5, 3))) == GeometryKind::Spherical);
    CHECK(dds::geometry_of(parse_symbol(fixtures::size1(3, 6))) == GeometryKind::Euclidean);
    CHECK(dds::geometry_of(parse_symbol(fixtures::size1(3, 7))) == GeometryKind::Hyperbolic);
}

TEST_CASE("orbifold of the eight-chamber example is 3*3") {
    dds::OrbifoldSignature sig = dds::orbifold(parse_symbol(fixtures::kS8));
    CHECK(sig.handles == 0);
    CHECK(sig.crosscaps == 0);
    CHECK(sig.cones == std::vector<int>{3});
    REQUIRE(sig.boundaries.size() == 1);
    CHECK(sig.boundaries[0] == std::vector<int>{3});
    CHECK(dds::orbifold_name(sig) == "3*3");
}

TEST_CASE("orbifolds of one-node symbols") {
    dds::OrbifoldSignature a = dds::orbifold(parse_symbol(fixtures::size1(5, 3)));
    CHECK(a.cones.empty());
    REQUIRE(a.boundaries.size() == 1);
    CHECK(a.boundaries[0].size() == 3);
    CHECK(dds::orbifold_name(a) == "*532");

    dds::OrbifoldSignature b = dds::orbifold(parse_symbol(fixtures::size1(4, 4)));
    CHECK(dds::orbifold_name(b) == "*442");
    CHECK(dds::orbifold_cost(b) == Rational(0));
}

TEST_CASE("orbifold name canonicalization and the trivial name") {
    dds::OrbifoldSignature trivial;
    CHECK(dds::orbifold_name(trivial) == "1");
    dds::OrbifoldSignature cones;
    cones.cones = {2, 6, 3};
    CHECK(dds::orbifold_name(cones) == "632");
    dds::OrbifoldSignature bad;
    bad.cones = {5};
    CHECK(dds::is_bad_orbifold(bad));
    CHECK_THROWS(dds::orbifold_name(bad));
    bad.cones = {5, 5};
    CHECK_FALSE(dds::is_bad_orbifold(bad));
}

TEST_CASE("euler characteristic is half the curvature and meets the cost formula") {
    CHECK(dds::euler_characteristic(parse_symbol(fixtures::kS8)) == Rational(0));
    CHECK(dds::euler_characteristic(parse_symbol(fixtures::size1(5, 3))) == Rational(1, 60));
    CHECK(dds::euler_characteristic(parse_symbol(fixtures::size1(3, 7))) == Rational(-1, 84));
    for (const char* text :
         {fixtures::kSquare, fixtures::kS8, fixtures::kDouble44}) {
        DelaneySymbol s = parse_symbol(text);
        CHECK(dds::orbifold_cost(dds::orbifold(s)) == dds::euler_characteristic(s));
    }
}

TEST_CASE("class counts") {
    dds::ClassCounts one = dds::class_counts(parse_symbol(fixtures::kSquare));
    CHECK(one == dds::ClassCounts{1, 1, 1});
    dds::ClassCounts s8 = dds::class_counts(parse_symbol(fixtures::kS8));
    CHECK(s8 == dds::ClassCounts{3, 3, 2});
    DelaneySymbol d = dds::dual(parse_symbol(fixtures::kS8));
    dds::ClassCounts dc = dds::class_counts(d);
    CHECK(dc.tiles == s8.vertices);
    CHECK(dc.vertices == s8.tiles);
    CHECK(dc.edges == s8.edges);
}

TEST_CASE("geometry minimality") {
    CHECK(dds::is_geometry_minimal(parse_symbol(fixtures::size1(3, 7))));
    CHECK_FALSE(dds::is_geometry_minimal(parse_symbol(fixtures::size1(4, 6))));
    CHECK(dds::is_geometry_minimal(parse_symbol(fixtures::size1(3, 5))));
    CHECK(dds::is_geometry_minimal(parse_symbol(fixtures::size1(4, 4))));
    CHECK_FALSE(dds::is_geometry_minimal(parse_symbol(fixtures::size1(5, 5))));
    CHECK_FALSE(dds::is_geometry_minimal(parse_symbol(fixtures::size1(3, 8))));
}

TEST_CASE("flags") {
    dds::SymbolFlags sq = dds::flags_of(parse_symbol(fixtures::size1(4, 4)));
    CHECK(sq.maximal);
    CHECK_FALSE(sq.colorable);
    CHECK_FALSE(sq.orientable);
    CHECK_FALSE(sq.fixed_point_free);
    CHECK(sq.self_dual);

    dds::SymbolFlags s8 = dds::flags_of(parse_symbol(fixtures::kS8));
    CHECK(s8.colorable);
    CHECK(s8.maximal);

    dds::SymbolFlags dbl = dds::flags_of(parse_symbol(fixtures::kDouble44));
    CHECK_FALSE(dbl.maximal);
    CHECK(dbl.orientable);
}

TEST_CASE("degree lists") {
    dds::DegreeLists a = dds::degree_lists(parse_symbol(fixtures::size1(3, 6)));
    CHECK(a.tile_degrees == std::vector<int>{3});
    CHECK(a.vertex_degrees == std::vector<int>{6});
    dds::DegreeLists b = dds::degree_lists(parse_symbol(fixtures::kS8));
    CHECK(b.tile_degrees == std::vector<int>{3, 3, 4});
    CHECK(b.vertex_degrees == std::vector<int>{4, 6});
    dds::DegreeLists d = dds::degree_lists(dds::dual(parse_symbol(fixtures::kS8)));
    CHECK(d.tile_degrees == b.vertex_degrees);
    CHECK(d.vertex_degrees == b.tile_degrees);
}

TEST_CASE("signature strings from the corner walk") {
    CHECK(dds::signature_string(parse_symbol(fixtures::size1(4, 4))) == "(4 4 4 4)");
    // frozen from the corner-walk on the three tile classes
    CHECK(dds::signature_string(parse_symbol(fixtures::kS8)) == "(4 4 4)(4 4 6 6)(4 6 6)");
}

TEST_CASE("symmetry classes") {
    CHECK(dds::symmetry_class(dds::orbifold(parse_symbol(fixtures::size1(5, 3)))) == "Coxeter");
    CHECK(dds::symmetry_class(dds::orbifold(parse_symbol(fixtures::kS8))) == "Hat");
    // all-swap two-node symbol has a pure cone orbifold
    DelaneySymbol stellate = parse_symbol("<2:2 1,2 1,2 1:6 6,3 3>");
    CHECK(dds::orbifold_name(dds::orbifold(stellate)) == "632");
    CHECK(dds::symmetry_class(dds::orbifold(stellate)) == "Stellate");
    dds::OrbifoldSignature trivial;
    CHECK(dds::symmetry_class(trivial) == "Sphere");
}

TEST_CASE("invariants are relabeling-invariant") {
    std::mt19937 rng(23);
    for (const char* text : {fixtures::kS8, fixtures::kDouble44}) {
        DelaneySymbol s = parse_symbol(text);
        auto sig = dds::orbifold_name(dds::orbifold(s));
        auto k = dds::curvature(s);
        auto f = dds::flags_of(s);
        auto sgn = dds::signature_string(s);
        for (int t = 0; t < 100; ++t) {
            DelaneySymbol r = fixtures::random_relabel(s, rng);
            CHECK(dds::orbifold_name(dds::orbifold(r)) == sig);
            CHECK(dds::curvature(r) == k);
            CHECK(dds::flags_of(r) == f);
            CHECK(dds::signature_string(r) == sgn);
        }
    }
}

TEST_CASE("duality preserves curvature and geometry") {
    for (const char* text : {fixtures::kS8, fixtures::kDouble44}) {
        DelaneySymbol s = parse_symbol(text);
        CHECK(dds::curvature(dds::dual(s)) == dds::curvature(s));
        CHECK(dds::geometry_of(dds::dual(s)) == dds::geometry_of(s));
    }
}
