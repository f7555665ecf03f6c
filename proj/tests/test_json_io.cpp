#include <string>

#include "orbitmetric/json_io.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

TEST_SUITE("json_io") {

TEST_CASE("system round trips") {
  const std::vector<SystemSpec> systems{
      SystemSpec::circle_rotation(kGolden), SystemSpec::doubling_map(),  SystemSpec::tent_map(),
      SystemSpec::logistic_map(3.7),        SystemSpec::binary_shift(12),
      SystemSpec::product(SystemSpec::circle_rotation(0.1), SystemSpec::binary_shift(8))};
  for (const auto& s : systems) {
    const Json j = system_to_json(s);
    CHECK(system_from_json(j) == s);
    CHECK(system_from_json(Json::parse(j.dump())) == s);
  }
  CHECK_ERROR_KIND(system_from_json(Json{{"kind", "circle_rotation"}, {"alpha", 0.1}, {"bogus", 1}}),
                   ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(system_from_json(Json{{"kind", "no_such_system"}}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(system_from_json(Json::array()), ErrorKind::InvalidArgument);
}

TEST_CASE("point round trips") {
  const auto circle = SystemSpec::circle_rotation(0.3);
  const auto tent = SystemSpec::tent_map();
  const auto shift = SystemSpec::binary_shift();
  const auto prod = SystemSpec::product(circle, shift);

  CHECK(point_from_json(circle, Json(0.25)) == Point::circle(0.25));
  CHECK(point_from_json(tent, Json("1/3")) == Point::interval(Rational{1, 3}));
  CHECK(point_from_json(shift, Json("0101(10)")) == Point::shift(SymbolSequence::parse("0101(10)")));
  CHECK(point_from_json(shift, Json{{"prefix", "0000"}, {"tail", "1"}}) ==
        Point::shift(SymbolSequence::parse("0000(1)")));

  const std::vector<std::pair<SystemSpec, Point>> cases{
      {circle, Point::circle(0.123456789)},
      {tent, Point::interval(Rational{2, 7})},
      {shift, Point::shift(SymbolSequence::parse("110(01)"))},
      {prod, Point::pair(Point::circle(0.5), Point::shift(SymbolSequence::constant(1)))}};
  for (const auto& [s, p] : cases) CHECK(point_from_json(s, Json::parse(point_to_json(p).dump())) == p);

  CHECK_ERROR_KIND(point_from_json(circle, Json("abc")), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(point_from_json(tent, Json(1.5)), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(point_from_json(shift, Json("012")), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(point_from_json(prod, Json::array({0.5})), ErrorKind::InvalidArgument);
}

TEST_CASE("measure and cost matrix parsing") {
  const auto tent = SystemSpec::tent_map();
  const DiscreteMeasure m(tent, {Point::interval(0.1), Point::interval(0.9)}, {0.25, 0.75});
  const auto back = measure_from_json(tent, Json::parse(measure_to_json(m).dump()));
  CHECK(back.size() == 2);
  CHECK(back.weights()[1] == 0.75);
  CHECK_ERROR_KIND(measure_from_json(tent, Json{{"atoms", {0.1}}, {"weights", {0.5, 0.5}}}),
                   ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(measure_from_json(tent, Json{{"atoms", {0.1}}}), ErrorKind::InvalidArgument);

  const auto c = cost_matrix_from_json(Json::parse("[[0, 1], [2, 3]]"));
  CHECK(c.size() == 2);
  CHECK(c(1, 0) == 2.0);
  CHECK_ERROR_KIND(cost_matrix_from_json(Json::parse("[[0, 1], [2]]")), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(cost_matrix_from_json(Json::parse("[[0, \"x\"], [2, 3]]")), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(cost_matrix_from_json(Json::parse("[[0, -1], [2, 3]]")), ErrorKind::InvalidArgument);
}

TEST_CASE("number formatting round trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 0.6180339887498949, 1e-300, 123456789.125}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("tail and Weyl serialisation") {
  const auto tent = SystemSpec::tent_map();
  const auto t = make_tail_estimate(Schedule({1, 2, 4}, 1), {0.5, 0.25, 0.125});
  const Json j = tail_to_json(t);
  CHECK(j["tail_sup"] == 0.25);
  CHECK(j["tail_last"] == 0.125);
  CHECK(j["checkpoints"].size() == 3);

  const std::string csv = tail_to_csv("ebar", tent, Json{{"seed", 1}}, t);
  CHECK(csv.rfind("# metric=ebar system=", 0) == 0);
  CHECK(csv.find("\n# config={\"seed\":1}\n") != std::string::npos);
  CHECK(csv.find("\nn,value\n1,0.5\n2,0.25\n4,0.125\n") != std::string::npos);

  WeylProfile w;
  w.horizon = 10;
  w.window_lengths = {2, 5};
  w.sup_window_avg = {{2, 0.5}, {5, 0.25}};
  CHECK(weyl_to_json(w)["windows"].size() == 2);
  CHECK(weyl_to_csv("weyl", tent, Json::object(), w).find("\n2,0.5\n5,0.25\n") != std::string::npos);
}

TEST_CASE("malformed JSON names line and column") {
  try {
    (void)parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json");
    FAIL("expected invalid-argument");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
    const std::string msg = e.what();
    CHECK(msg.find("cfg.json:3:") != std::string::npos);
    CHECK(msg.find("malformed JSON") != std::string::npos);
  }
  CHECK(parse_json_text("{\"a\": [1, 2]}", "x")["a"].size() == 2);
}

}
