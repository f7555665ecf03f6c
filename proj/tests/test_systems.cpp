#include <cmath>

#include "orbitmetric/systems.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

TEST_SUITE("systems") {

TEST_CASE("system specs report geometry and diameter") {
  CHECK(SystemSpec::circle_rotation(0.3).geometry() == Geometry::Circle);
  CHECK(SystemSpec::doubling_map().diameter() == 0.5);
  CHECK(SystemSpec::tent_map().diameter() == 1.0);
  CHECK(SystemSpec::binary_shift().diameter() == 1.0);
  const auto p = product_system(SystemSpec::circle_rotation(0.1), SystemSpec::tent_map());
  CHECK(p.diameter() == 1.0);
  CHECK(p.first().kind() == SystemKind::CircleRotation);
  CHECK(p.second().kind() == SystemKind::TentMap);
  CHECK_ERROR_KIND(SystemSpec::circle_rotation(1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(SystemSpec::logistic_map(4.5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(SystemSpec::binary_shift(0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(SystemSpec::binary_shift(65), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(SystemSpec::tent_map().first(), ErrorKind::InvalidArgument);
}

TEST_CASE("maps act as expected") {
  const auto rot = SystemSpec::circle_rotation(0.5);
  CHECK(apply_map(rot, Point::circle(0.75)).coordinate() == doctest::Approx(0.25));
  CHECK(apply_map(SystemSpec::logistic_map(4.0), Point::interval(0.5)).coordinate() == 1.0);
  CHECK(apply_map(SystemSpec::tent_map(), Point::interval(0.25)).coordinate() == 0.5);
  CHECK(apply_map(SystemSpec::tent_map(), Point::interval(0.75)).coordinate() == 0.5);
}

TEST_CASE("rational points iterate exactly") {
  const auto dbl = SystemSpec::doubling_map();
  const Point third = Point::circle(Rational{1, 3});
  const Point two_thirds = apply_map(dbl, third);
  REQUIRE(two_thirds.exact().has_value());
  CHECK(*two_thirds.exact() == Rational{2, 3});
  CHECK(apply_map(dbl, two_thirds) == third);
  CHECK(*Point::circle(Rational{2, 6}).exact() == Rational{1, 3});
  const Point tent_fixed = apply_map(SystemSpec::tent_map(), Point::interval(Rational{2, 3}));
  CHECK(*tent_fixed.exact() == Rational{2, 3});
}

TEST_CASE("ground metrics") {
  const auto rot = SystemSpec::circle_rotation(0.1);
  CHECK(dist(rot, Point::circle(0.1), Point::circle(0.9)) == doctest::Approx(0.2));
  CHECK(dist(rot, Point::circle(0.0), Point::circle(0.5)) == 0.5);
  CHECK(dist(SystemSpec::tent_map(), Point::interval(0.1), Point::interval(0.9)) == doctest::Approx(0.8));

  const auto shift = SystemSpec::binary_shift();
  const Point zero = Point::shift(SymbolSequence::constant(0));
  const Point near = Point::shift(SymbolSequence::parse("0000000000(1)"));
  CHECK(dist(shift, zero, near) == std::ldexp(1.0, -10));
  CHECK(dist(shift, zero, zero) == 0.0);
  CHECK(dist(shift, zero, Point::shift(SymbolSequence::constant(1))) == 1.0);
  CHECK(dist(SystemSpec::binary_shift(5), zero, near) == 0.0);

  const auto prod = product_system(rot, shift);
  CHECK(dist(prod, Point::pair(Point::circle(0.0), zero), Point::pair(Point::circle(0.3), near)) ==
        doctest::Approx(0.3));
}

TEST_CASE("metric axioms on random circle and shift points") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  for (int i = 0; i < 50; ++i) {
    const Point a = Point::circle(std::fmod(0.137 * i, 1.0));
    const Point b = Point::circle(std::fmod(0.291 * i + 0.3, 1.0));
    const Point c = Point::circle(std::fmod(0.773 * i + 0.6, 1.0));
    CHECK(dist(rot, a, b) == dist(rot, b, a));
    CHECK(dist(rot, a, c) <= dist(rot, a, b) + dist(rot, b, c) + 1e-15);
    CHECK(dist(rot, a, a) == 0.0);
  }
}

TEST_CASE("point validation") {
  CHECK_ERROR_KIND(validate_point(SystemSpec::circle_rotation(0.1), Point::circle(1.0)), ErrorKind::InvalidArgument);
  CHECK_NOTHROW(validate_point(SystemSpec::tent_map(), Point::interval(1.0)));
  CHECK_ERROR_KIND(validate_point(SystemSpec::tent_map(), Point::interval(1.5)), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(validate_point(SystemSpec::tent_map(), Point::circle(0.5)), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(validate_point(SystemSpec::binary_shift(), Point::interval(0.5)), ErrorKind::InvalidArgument);
}

TEST_CASE("symbol sequences") {
  const auto s = SymbolSequence::parse("0000000000(1)");
  CHECK(s.to_string() == "0000000000(1)");
  CHECK(s.symbol(9) == 0);
  CHECK(s.symbol(10) == 1);
  CHECK(s.symbol(1000) == 1);
  CHECK(s.shifted(10) == SymbolSequence::constant(1));
  CHECK(SymbolSequence::parse("(0)") == SymbolSequence::constant(0));

  const auto periodic = SymbolSequence::parse("1(01)");
  CHECK(periodic.symbol(0) == 1);
  CHECK(periodic.symbol(1) == 0);
  CHECK(periodic.symbol(2) == 1);
  CHECK(periodic.shifted(2).to_string() == "(10)");

  const auto finite = SymbolSequence::parse("101");
  CHECK(finite.available() == 3);
  CHECK_ERROR_KIND(finite.symbol(3), ErrorKind::InsufficientTail);
  CHECK_ERROR_KIND(SymbolSequence::parse("01(2)"), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(SymbolSequence::parse("01(1"), ErrorKind::InvalidArgument);

  CHECK(SymbolSequence::parse("1(0)").window(4) == (std::uint64_t{1} << 63));
}

TEST_CASE("orbit segments") {
  const auto rot = SystemSpec::circle_rotation(0.25);
  const auto seg = orbit_segment(rot, Point::circle(0.5), 4);
  REQUIRE(seg.size() == 4);
  CHECK(seg.coordinates()[0] == 0.5);
  CHECK(seg.coordinates()[1] == 0.75);
  CHECK(seg.coordinates()[2] == 0.0);
  CHECK(seg.coordinates()[3] == 0.25);
  CHECK(seg.state(2) == Point::circle(0.0));
  CHECK(seg.prefix(2).size() == 2);
  CHECK_ERROR_KIND(orbit_segment(rot, Point::circle(0.5), 0), ErrorKind::InvalidArgument);

  const auto shift = SystemSpec::binary_shift(8);
  const auto word = SymbolSequence::parse("0110100110010110(1)");
  const auto sseg = orbit_segment(shift, Point::shift(word), 20);
  for (std::size_t k = 0; k < 20; ++k) CHECK(sseg.windows()[k] == word.shifted(k).window(8));

  const Point finite = Point::shift(SymbolSequence::parse("0101"));
  CHECK_ERROR_KIND(orbit_segment(shift, finite, 1), ErrorKind::InsufficientTail);
  CHECK_NOTHROW(orbit_segment(SystemSpec::binary_shift(3), finite, 1));
}

TEST_CASE("cost matrices and precision") {
  const auto shift = SystemSpec::binary_shift(12);
  const auto a = orbit_segment(shift, Point::shift(SymbolSequence::constant(0)), 5);
  const auto b = orbit_segment(shift, Point::shift(SymbolSequence::parse("00(1)")), 5);
  const auto c = cost_matrix(a, b);
  CHECK(c.size() == 5);
  CHECK(c.precision_bound() == std::ldexp(1.0, -12));
  CHECK(c(0, 0) == 0.25);
  CHECK(c(0, 2) == 1.0);
  CHECK(c.leading(2).size() == 2);
  CHECK(c.leading(2)(1, 1) == c(1, 1));
  CHECK(precision_bound(SystemSpec::tent_map()) == 0.0);

  const auto other = orbit_segment(shift, Point::shift(SymbolSequence::constant(0)), 4);
  CHECK_ERROR_KIND(cost_matrix(a, other), ErrorKind::InvalidArgument);
}

TEST_CASE("block construction for the counterexample") {
  const std::vector<std::int64_t> rule{1, 2, 6};
  const Point u = build_example31_point(Example31Variant::U, rule, 3);
  const Point v = build_example31_point(Example31Variant::V, rule, 3);
  CHECK(u.symbols().to_string() == "011000000(0)");
  CHECK(v.symbols().to_string() == "100111111(1)");
  CHECK_ERROR_KIND(build_example31_point(Example31Variant::U, rule, 4), ErrorKind::InvalidArgument);
}

}
