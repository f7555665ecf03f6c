#include <string>

#include "orbitmetric/analysis.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

namespace {

Point zeros() { return Point::shift(SymbolSequence::constant(0)); }
Point ones() { return Point::shift(SymbolSequence::constant(1)); }

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("continuity modulus: delta = 0 is inconclusive with no samples") {
  const auto r = continuity_modulus(SystemSpec::tent_map(), 0.0, 10, Schedule::geometric(100), 1);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.rows.empty());
  CHECK(r.summary["pairs"] == 0);
  CHECK_ERROR_KIND(continuity_modulus(SystemSpec::tent_map(), -0.1, 10, Schedule::geometric(100), 1),
                   ErrorKind::InvalidArgument);
}

TEST_CASE("continuity modulus: shift is violated, rotation is consistent") {
  const auto shift = SystemSpec::binary_shift();
  const auto s = continuity_modulus(shift, std::ldexp(1.0, -10), 8, Schedule({250, 500}, 0), 2);
  CHECK(s.summary["modulus"].get<double>() >= 0.98);
  CHECK(s.verdict == Verdict::Violated);
  REQUIRE_FALSE(s.witnesses.empty());
  for (double d : s.column("distance")) CHECK(d <= std::ldexp(1.0, -10));

  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto r = continuity_modulus(rot, 0.05, 10, Schedule::geometric(500), 3);
  CHECK(r.summary["modulus"].get<double>() <= 0.05 + 1e-12);
  CHECK(r.verdict == Verdict::Consistent);
  CHECK(r.witnesses.empty());
}

TEST_CASE("continuity modulus on explicit pairs") {
  const auto shift = SystemSpec::binary_shift();
  const PointPairs pairs{{zeros(), Point::shift(SymbolSequence::parse("0000000000(1)"))}};
  const auto r = continuity_modulus_pairs(shift, std::ldexp(1.0, -10), pairs, Schedule({500}, 0));
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0][2] == doctest::Approx((490.0 + 1.0 - std::ldexp(1.0, -10)) / 500.0));
  CHECK(r.verdict == Verdict::Violated);
}

TEST_CASE("empirical equicontinuity") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto r = empirical_equicontinuity(rot, 0.01, 5, {10, 100, 1000}, 4);
  CHECK(r.summary["max_prokhorov"].get<double>() <= 0.01 + 1e-12);
  CHECK(r.verdict == Verdict::Consistent);

  const auto shift = SystemSpec::binary_shift();
  const PointPairs pairs{{zeros(), Point::shift(SymbolSequence::parse("00000000(1)"))}};
  const auto s = empirical_equicontinuity_pairs(shift, 0.01, pairs, {500});
  CHECK(s.summary["max_prokhorov"].get<double>() >= 0.9);
  CHECK(s.verdict == Verdict::Violated);
}

TEST_CASE("unique ergodicity") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto r = unique_ergodicity_diagnostic(rot, 6, Schedule::geometric(2000), 5);
  CHECK(r.verdict == Verdict::Consistent);
  CHECK(r.rows.size() == 15);

  const auto shift = SystemSpec::binary_shift();
  const auto s = unique_ergodicity_points(shift, {zeros(), ones()}, Schedule::geometric(100));
  CHECK(s.summary["diameter"] == 1.0);
  CHECK(s.verdict == Verdict::Violated);
  CHECK(s.witnesses.size() == 1);

  const auto same = unique_ergodicity_points(rot, {Point::circle(0.2), Point::circle(0.2)}, Schedule::geometric(100));
  CHECK(same.verdict == Verdict::Inconclusive);
  CHECK_ERROR_KIND(unique_ergodicity_points(rot, {Point::circle(0.2)}, Schedule::geometric(100)),
                   ErrorKind::InvalidArgument);
}

TEST_CASE("omega distance") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto same = omega_distance(rot, Point::circle(0.4), Point::circle(0.4), Schedule::geometric(500));
  CHECK(same.summary["rho_h"] == 0.0);
  CHECK(same.summary["ebar_tail_sup"] == 0.0);
  CHECK(same.verdict != Verdict::Violated);

  const auto shift = SystemSpec::binary_shift();
  const auto far = omega_distance(shift, zeros(), ones(), Schedule::geometric(200));
  CHECK(far.summary["rho_h"] == 1.0);
  CHECK(far.summary["ebar_tail_sup"] == 1.0);
  CHECK(far.verdict != Verdict::Violated);
}

TEST_CASE("Birkhoff profile") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto c = birkhoff_profile(rot, "constant:0.5", 5, Schedule::geometric(100), 6);
  for (double v : c.column("spread")) CHECK(v == 0.0);
  for (double v : c.column("min")) CHECK(v == doctest::Approx(0.5));
  CHECK(c.verdict == Verdict::Consistent);

  const auto s = birkhoff_profile_points(SystemSpec::binary_shift(), "first_symbol", {zeros(), ones()},
                                         Schedule::geometric(100));
  for (double v : s.column("spread")) CHECK(v == 1.0);
  CHECK(s.verdict == Verdict::Violated);

  CHECK_ERROR_KIND(birkhoff_profile(rot, "no_such_observable", 5, Schedule::geometric(100), 6),
                   ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(c.column("no_such_column"), ErrorKind::InvalidArgument);
}

TEST_CASE("mean equicontinuity") {
  const auto rot = SystemSpec::circle_rotation(kGolden);
  const auto r = mean_equicontinuity_diagnostic(rot, 0.05, 5, Schedule::geometric(200), 7);
  CHECK(r.summary["product_ebar_modulus"].get<double>() <= 0.05 + 1e-12);
  CHECK(r.summary["besicovitch_modulus"].get<double>() <= 0.05 + 1e-12);
  CHECK(r.summary["weyl_modulus"].get<double>() <= 0.05 + 1e-12);
  CHECK(r.verdict == Verdict::Consistent);
  for (const auto& row : r.rows) CHECK(row[3] <= row[4] + 1e-12);

  const auto big = mean_equicontinuity_diagnostic(rot, 0.75, 5, Schedule::geometric(200), 7);
  CHECK(big.verdict == Verdict::Inconclusive);
  CHECK(big.summary.contains("note"));
}

TEST_CASE("En-equicontinuity") {
  const auto tent = SystemSpec::tent_map();
  const auto r = en_equicontinuity_diagnostic(tent, 0.01, 6, {1}, 8);
  REQUIRE(r.rows.size() == 6);
  for (const auto& row : r.rows) CHECK(row[3] == doctest::Approx(row[2]));
  CHECK(r.verdict == Verdict::Consistent);
  CHECK_ERROR_KIND(en_equicontinuity_diagnostic(tent, 0.01, 6, {}, 8), ErrorKind::InvalidArgument);
}

TEST_CASE("block counterexample reports") {
  const auto r = example31_report(Example31Config::factorial(4));
  REQUIRE(r.rows.size() == 4);
  CHECK(r.column("b_n") == std::vector<double>{1, 3, 9, 33});
  CHECK(r.column("lower_bound")[3] == doctest::Approx(15.0 / 33.0));
  for (const auto& row : r.rows) CHECK(row[4] >= row[3] - 1e-12);

  const auto again = example31_report(Example31Config::factorial(4));
  CHECK(report_to_json(again, Json::object()).dump() == report_to_json(r, Json::object()).dump());

  CHECK_ERROR_KIND(example31_report(Example31Config::factorial(7)), ErrorKind::SizeLimit);
  Example31Config bad;
  bad.block_rule = {1, 2};
  bad.n_blocks = 3;
  CHECK_ERROR_KIND(example31_report(bad), ErrorKind::InvalidArgument);
}

TEST_CASE("report serialisation") {
  const auto r = unique_ergodicity_points(SystemSpec::binary_shift(), {zeros(), ones()}, Schedule::geometric(20));
  const Json config{{"seed", 3}};
  const Json j = report_to_json(r, config);
  CHECK(j["name"] == "unique_ergodicity");
  CHECK(j["config"] == config);
  CHECK(j["verdict"] == "violated");
  CHECK(j["observations"]["columns"].size() == 3);
  CHECK(j["observations"]["rows"].size() == 1);
  CHECK(j.contains("version"));

  const std::string csv = report_to_csv(r, config);
  CHECK(csv.rfind("# ", 0) == 0);
  CHECK(csv.find("\ni,j,ebar_tail_sup\n") != std::string::npos);
  CHECK(csv.find("verdict=violated") != std::string::npos);
}

}
