#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/fuzz.hpp"
#include "matmeasure/mult_op.hpp"
#include "matmeasure/symbol_parser.hpp"

using namespace matmeasure;

TEST_CASE("union keeps isolated points outside intervals") {
    const auto s = set_union(BorelSet::interval(0, 1), BorelSet::point(2));
    REQUIRE(s.intervals().size() == 1);
    REQUIRE(s.points().size() == 1);
    CHECK(s.points()[0] == 2.0);
    CHECK(s.contains(0.5));
    CHECK(s.contains(2.0));
    CHECK_FALSE(s.contains(1.5));
}

TEST_CASE("intersection with mixed endpoints") {
    const auto s = set_intersect(BorelSet::interval(0, 2, false, false),
                                 BorelSet::interval(1, 3, true, true));
    CHECK(s == BorelSet::interval(1, 2, true, false));
}

TEST_CASE("complement of the line is empty") {
    CHECK(set_complement(BorelSet::real_line()).is_empty());
    CHECK(set_complement(BorelSet::empty()) == BorelSet::real_line());
}

TEST_CASE("points absorbed by intervals and adjacency merge") {
    const auto s = set_union(BorelSet::interval(0, 1), BorelSet::point(0.5));
    CHECK(s == BorelSet::interval(0, 1));
    const auto t = set_union(BorelSet::interval(0, 1, true, true),
                             BorelSet::interval(1, 2, true, true));
    CHECK(t == BorelSet::interval(0, 2));
    // A shared open endpoint leaves a hole.
    const auto h = set_union(BorelSet::interval(0, 1, true, false),
                             BorelSet::interval(1, 2, false, true));
    CHECK_FALSE(h.contains(1.0));
    CHECK(h.intervals().size() == 2);
}

TEST_CASE("leb_measure") {
    CHECK(set_union(BorelSet::interval(0, 1), BorelSet::point(5)).leb_measure() == 1.0);
    CHECK(BorelSet::empty().leb_measure() == 0.0);
    CHECK(BorelSet::interval(-kInf, 0, false, true).leb_measure() == kInf);
}

TEST_CASE("leb_closure drops points and closes intervals") {
    const auto g = set_union(BorelSet::interval(0, 1, false, false), BorelSet::point(2));
    CHECK(g.leb_closure() == BorelSet::interval(0, 1));
    CHECK(BorelSet::interval(0, 1).leb_closure() == BorelSet::interval(0, 1));
    CHECK(BorelSet::from_raw({}, {1, 2, 3}).leb_closure().is_empty());
}

TEST_CASE("preimage of affine symbols") {
    const auto idp = preimage(PiecewiseScalarFn::identity(), BorelSet::interval(0, 0.5),
                              BorelSet::interval(0, 1));
    CHECK(idp == BorelSet::interval(0, 0.5));

    const auto aff = preimage(PiecewiseScalarFn::polynomial(parse_poly("2*x+1")),
                              BorelSet::interval(1, 3));
    CHECK(aff == BorelSet::interval(0, 1));

    CHECK(preimage(PiecewiseScalarFn::identity(), BorelSet::empty()).is_empty());
    CHECK_THROWS_AS(preimage(PiecewiseScalarFn::polynomial(parse_poly("x^2")),
                             BorelSet::interval(0, 1)),
                    UnsupportedFunction);
}

TEST_CASE("preimage with negative slope flips endpoints") {
    const auto s = preimage(PiecewiseScalarFn::polynomial(parse_poly("1-x")),
                            BorelSet::interval(0, 1, true, false));
    CHECK(s == BorelSet::interval(0, 1, false, true));
}

TEST_CASE("parse and format round trip") {
    const auto s = BorelSet::parse("[0,1]u(2,3)u{5}");
    CHECK(s.contains(0.0));
    CHECK(s.contains(2.5));
    CHECK_FALSE(s.contains(2.0));
    CHECK(s.contains(5.0));
    CHECK(BorelSet::parse(s.to_string()) == s);
    CHECK(BorelSet::parse("{}").is_empty());
    CHECK(BorelSet::parse("(-inf,0]").contains(-1e9));
    CHECK_THROWS_AS(BorelSet::parse("[1,0]"), ParseError);
    CHECK_THROWS_AS(BorelSet::parse("[1;2]"), ParseError);
}

TEST_CASE("fuzz: De Morgan, idempotence, inclusion-exclusion") {
    fuzz::Rng rng(4242);
    for (int rep = 0; rep < 200; ++rep) {
        const auto a = rng.borel_set(6, 4);
        const auto b = rng.borel_set(6, 4);
        CHECK(set_complement(set_union(a, b)) ==
              set_intersect(set_complement(a), set_complement(b)));
        CHECK(set_complement(set_intersect(a, b)) ==
              set_union(set_complement(a), set_complement(b)));
        CHECK(set_union(a, a) == a);
        CHECK(set_intersect(a, a) == a);
        CHECK(set_complement(set_complement(a)) == a);
        CHECK(set_union(a, set_minus(b, a)) == set_union(a, b));

        const double lhs = set_union(a, b).leb_measure() + set_intersect(a, b).leb_measure();
        const double rhs = a.leb_measure() + b.leb_measure();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        CHECK(is_subset(a.leb_closure(), a.closure()));
    }
}

TEST_CASE("fuzz: parse/format round trip is the identity") {
    fuzz::Rng rng(99);
    for (int rep = 0; rep < 100; ++rep) {
        const auto a = rng.borel_set(5, 3);
        CHECK(BorelSet::parse(a.to_string()) == a);
    }
}
