#include <random>

#include "orbitmetric/measures.hpp"
#include "orbitmetric/sampling.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

namespace {

DiscreteMeasure random_measure(const SystemSpec& s, std::mt19937_64& rng, int atoms) {
  std::vector<Point> pts;
  std::vector<double> w;
  for (int i = 0; i < atoms; ++i) {
    pts.push_back(sample_point(s, rng, 16));
    w.push_back(uniform01(rng) + 0.01);
  }
  return DiscreteMeasure::normalized(s, std::move(pts), std::move(w));
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("discrete measure construction") {
  const auto line = SystemSpec::tent_map();
  CHECK_NOTHROW(DiscreteMeasure(line, {Point::interval(0.1), Point::interval(0.2)}, {0.25, 0.75}));
  CHECK_ERROR_KIND(DiscreteMeasure(line, {Point::interval(0.1)}, {0.9}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(DiscreteMeasure(line, {Point::interval(0.1), Point::interval(0.2)}, {1.5, -0.5}),
                   ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(DiscreteMeasure(line, {Point::interval(0.1)}, {0.5, 0.5}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(DiscreteMeasure(line, {}, {}), ErrorKind::InvalidArgument);

  const auto merged = DiscreteMeasure(line, {Point::interval(0.3), Point::interval(0.3), Point::interval(0.6)},
                                      {0.25, 0.25, 0.5});
  CHECK(merged.size() == 2);
  const auto dropped = DiscreteMeasure(line, {Point::interval(0.3), Point::interval(0.6)}, {1.0, 0.0});
  CHECK(dropped.size() == 1);

  const auto shift = SystemSpec::binary_shift(4);
  const auto m = DiscreteMeasure::uniform(
      shift, {Point::shift(SymbolSequence::parse("0000(1)")), Point::shift(SymbolSequence::constant(0))});
  CHECK(m.size() == 1);
  CHECK(m.weights()[0] == 1.0);
}

TEST_CASE("empirical measures") {
  const auto dbl = SystemSpec::doubling_map();
  const auto seg = orbit_segment(dbl, Point::circle(Rational{1, 3}), 10);
  const auto m = empirical_measure(seg);
  REQUIRE(m.size() == 2);
  CHECK(m.weights()[0] == 0.5);
  CHECK(m.weights()[1] == 0.5);
  CHECK(empirical_measure(seg, 3).size() == 2);
  CHECK_ERROR_KIND(empirical_measure(seg, 11), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(empirical_measure(seg, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("W1 hand examples") {
  const auto line = SystemSpec::tent_map();
  const auto circle = SystemSpec::circle_rotation(0.1);
  const auto d1 = DiscreteMeasure::dirac(line, Point::interval(0.2));
  const auto d2 = DiscreteMeasure::dirac(line, Point::interval(0.7));
  CHECK(wasserstein1(d1, d2, line) == doctest::Approx(0.5));
  CHECK(wasserstein1_fast_1d(d1, d2, Geometry1D::Line) == doctest::Approx(0.5));

  const auto c1 = DiscreteMeasure::dirac(circle, Point::circle(0.05));
  const auto c2 = DiscreteMeasure::dirac(circle, Point::circle(0.95));
  CHECK(wasserstein1(c1, c2, circle) == doctest::Approx(0.1));
  CHECK(wasserstein1_fast_1d(c1, c2, Geometry1D::Circle) == doctest::Approx(0.1));

  const auto half = DiscreteMeasure(line, {Point::interval(0.0), Point::interval(1.0)}, {0.5, 0.5});
  CHECK(wasserstein1(DiscreteMeasure::dirac(line, Point::interval(0.0)), half, line) == doctest::Approx(0.5));
  CHECK_ERROR_KIND(wasserstein1(d1, c1, line), ErrorKind::InvalidArgument);
}

TEST_CASE("W1: fast path agrees with transport, and metric properties") {
  std::mt19937_64 rng(21);
  for (const auto& system : {SystemSpec::tent_map(), SystemSpec::circle_rotation(0.3)}) {
    const auto geom = system.geometry() == Geometry::Circle ? Geometry1D::Circle : Geometry1D::Line;
    for (int t = 0; t < 40; ++t) {
      const auto a = random_measure(system, rng, 1 + t % 9);
      const auto b = random_measure(system, rng, 1 + (t * 7) % 11);
      const auto c = random_measure(system, rng, 3);
      const double ab = wasserstein1(a, b, system);
      CHECK(wasserstein1_fast_1d(a, b, geom) == doctest::Approx(ab).epsilon(1e-9));
      CHECK(wasserstein1(b, a, system) == doctest::Approx(ab).epsilon(1e-9));
      CHECK(wasserstein1(a, c, system) <= ab + wasserstein1(b, c, system) + 1e-9);
      CHECK(wasserstein1(a, a, system) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("Prokhorov hand examples") {
  const auto line = SystemSpec::tent_map();
  const auto zero = DiscreteMeasure::dirac(line, Point::interval(0.0));
  const auto half = DiscreteMeasure(line, {Point::interval(0.0), Point::interval(1.0)}, {0.5, 0.5});
  CHECK(prokhorov(zero, half, line) == doctest::Approx(0.5));
  CHECK(prokhorov_oracle(zero, half, line) == doctest::Approx(0.5));
  CHECK(prokhorov(half, half, line) == 0.0);
  CHECK(prokhorov(zero, DiscreteMeasure::dirac(line, Point::interval(0.3)), line) == 0.3);

  const auto shift = SystemSpec::binary_shift();
  const auto z = DiscreteMeasure::dirac(shift, Point::shift(SymbolSequence::constant(0)));
  const auto o = DiscreteMeasure::dirac(shift, Point::shift(SymbolSequence::constant(1)));
  CHECK(prokhorov(z, o, shift) == 1.0);
}

TEST_CASE("Prokhorov: flow solver equals the subset oracle; bounded by sqrt(W1)") {
  std::mt19937_64 rng(22);
  const std::vector<SystemSpec> systems{SystemSpec::tent_map(), SystemSpec::circle_rotation(0.2),
                                        SystemSpec::binary_shift(6)};
  for (int t = 0; t < 90; ++t) {
    const auto& s = systems[static_cast<std::size_t>(t) % 3];
    const auto a = random_measure(s, rng, 1 + t % 8);
    const auto b = random_measure(s, rng, 1 + (t / 3) % 8);
    const double p = prokhorov(a, b, s);
    CHECK(p == doctest::Approx(prokhorov_oracle(a, b, s)).epsilon(1e-9));
    CHECK(p == doctest::Approx(prokhorov(b, a, s)).epsilon(1e-9));
    CHECK(p * p <= wasserstein1(a, b, s) + 1e-9);
  }
  std::vector<double> many(13, 1.0 / 13.0);
  std::vector<double> dist(13, 0.5);
  const std::vector<double> one{1.0};
  CHECK_ERROR_KIND(prokhorov_oracle_from_distances(many, one, dist), ErrorKind::SizeLimit);
}

TEST_CASE("Hausdorff distance between measure sets") {
  const auto line = SystemSpec::tent_map();
  const auto a = DiscreteMeasure::dirac(line, Point::interval(0.0));
  const auto b = DiscreteMeasure::dirac(line, Point::interval(0.2));
  const auto c = DiscreteMeasure::dirac(line, Point::interval(0.9));
  CHECK(hausdorff_measures(MeasureSet({a}), MeasureSet({b}), line) == doctest::Approx(0.2));
  CHECK(hausdorff_measures(MeasureSet({a, c}), MeasureSet({b}), line) == doctest::Approx(0.7));
  CHECK(hausdorff_measures(MeasureSet({b}), MeasureSet({a, c}), line) == doctest::Approx(0.7));
  CHECK(hausdorff_measures(MeasureSet({a, c}), MeasureSet({c, a}), line) == 0.0);
  CHECK_ERROR_KIND(MeasureSet({}), ErrorKind::InvalidArgument);
}

TEST_CASE("schedules") {
  const auto s = Schedule::geometric(10);
  CHECK(std::vector<std::int64_t>(s.checkpoints().begin(), s.checkpoints().end()) ==
        std::vector<std::int64_t>{1, 2, 3, 5, 8});
  CHECK(s.tail_start() == 0);
  CHECK(Schedule::geometric(1000).tail_start() == Schedule::geometric(1000).size() - 5);
  CHECK_ERROR_KIND(Schedule({3, 2}, 0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Schedule({}, 0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Schedule({1, 2}, 2), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Schedule({0, 2}, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("omega-hat estimates") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto schedule = Schedule::geometric(2000);
  const auto e = omega_hat_estimate(rot, Point::circle(0.1), schedule);
  CHECK(e.representatives.size() == 1);
  CHECK(e.trace_n.size() == 5);

  const auto shift = SystemSpec::binary_shift();
  const auto fixed = omega_hat_estimate(shift, Point::shift(SymbolSequence::constant(1)), Schedule::geometric(200));
  CHECK(fixed.representatives.size() == 1);
  CHECK(fixed.representatives.members()[0].size() == 1);

  // Along one orbit the estimate moves by at most diameter * m / n_min + cluster_tol.
  const Point x = Point::circle(0.37);
  const Point tx = apply_map(rot, apply_map(rot, apply_map(rot, x)));
  const auto ex = omega_hat_estimate(rot, x, schedule);
  const auto et = omega_hat_estimate(rot, tx, schedule);
  const double n_min = static_cast<double>(schedule.checkpoints()[schedule.tail_start()]);
  CHECK(hausdorff_measures(ex.representatives, et.representatives, rot) <=
        rot.diameter() * 3.0 / n_min + kDefaultClusterTol);
  CHECK_ERROR_KIND(omega_hat_estimate(rot, x, schedule, 0.0), ErrorKind::InvalidArgument);
}

}
