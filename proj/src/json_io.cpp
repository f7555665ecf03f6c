#include "orbitmetric/json_io.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "orbitmetric/errors.hpp"

namespace orbitmetric {

namespace {

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    require(ok.count(item.key()) > 0, "unknown key '" + item.key() + "' in " + what);
  }
}

double number_field(const Json& j, const char* key) {
  require(j.contains(key), std::string("system is missing '") + key + "'");
  require(j[key].is_number(), std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  require(slash != std::string::npos, "rational must look like p/q: '" + text + "'");
  Rational q;
  const char* b = text.data();
  const char* e = b + text.size();
  auto r1 = std::from_chars(b, b + slash, q.num);
  auto r2 = std::from_chars(b + slash + 1, e, q.den);
  require(r1.ec == std::errc() && r1.ptr == b + slash && r2.ec == std::errc() && r2.ptr == e,
          "malformed rational '" + text + "'");
  require(q.den > 0, "rational denominator must be positive");
  return q;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json system_to_json(const SystemSpec& system) {
  Json j;
  j["kind"] = system.kind_name();
  switch (system.kind()) {
    case SystemKind::CircleRotation: j["alpha"] = system.alpha(); break;
    case SystemKind::LogisticMap: j["r"] = system.r(); break;
    case SystemKind::Product:
      j["first"] = system_to_json(system.first());
      j["second"] = system_to_json(system.second());
      return j;
    default: break;
  }
  j["shift_horizon"] = system.shift_horizon();
  return j;
}

SystemSpec system_from_json(const Json& j) {
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(),
          "system must be an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  int horizon = kDefaultShiftHorizon;
  if (j.contains("shift_horizon")) {
    require(j["shift_horizon"].is_number_integer(), "'shift_horizon' must be an integer");
    horizon = j["shift_horizon"].get<int>();
  }
  SystemSpec s;
  if (kind == "circle_rotation") {
    reject_unknown_keys(j, {"kind", "alpha", "shift_horizon"}, "circle_rotation");
    s = SystemSpec::circle_rotation(number_field(j, "alpha"));
  } else if (kind == "doubling_map") {
    reject_unknown_keys(j, {"kind", "shift_horizon"}, "doubling_map");
    s = SystemSpec::doubling_map();
  } else if (kind == "tent_map") {
    reject_unknown_keys(j, {"kind", "shift_horizon"}, "tent_map");
    s = SystemSpec::tent_map();
  } else if (kind == "logistic_map") {
    reject_unknown_keys(j, {"kind", "r", "shift_horizon"}, "logistic_map");
    s = SystemSpec::logistic_map(number_field(j, "r"));
  } else if (kind == "binary_shift") {
    reject_unknown_keys(j, {"kind", "shift_horizon"}, "binary_shift");
    s = SystemSpec::binary_shift();
  } else if (kind == "product") {
    reject_unknown_keys(j, {"kind", "first", "second"}, "product");
    require(j.contains("first") && j.contains("second"), "product needs 'first' and 'second'");
    return SystemSpec::product(system_from_json(j["first"]), system_from_json(j["second"]));
  } else {
    fail(ErrorKind::InvalidArgument, "unknown system kind '" + kind + "'");
  }
  return s.with_shift_horizon(horizon);
}

Json point_to_json(const Point& p) {
  if (p.is_pair()) return Json::array({point_to_json(p.first()), point_to_json(p.second())});
  if (p.is_shift()) return p.symbols().to_string();
  if (auto q = p.exact()) return std::to_string(q->num) + "/" + std::to_string(q->den);
  return p.coordinate();
}

Point point_from_json(const SystemSpec& system, const Json& j) {
  Point p;
  switch (system.geometry()) {
    case Geometry::Circle:
    case Geometry::Line: {
      const bool circle = system.geometry() == Geometry::Circle;
      if (j.is_number()) {
        const double v = j.get<double>();
        p = circle ? Point::circle(v) : Point::interval(v);
      } else if (j.is_string()) {
        const Rational q = parse_rational(j.get<std::string>());
        p = circle ? Point::circle(q) : Point::interval(q);
      } else {
        fail(ErrorKind::InvalidArgument, "scalar point must be a number or a 'p/q' string");
      }
      break;
    }
    case Geometry::Symbolic: {
      if (j.is_string()) {
        p = Point::shift(SymbolSequence::parse(j.get<std::string>()));
      } else if (j.is_object()) {
        reject_unknown_keys(j, {"prefix", "tail"}, "shift point");
        std::string text = j.value("prefix", "");
        if (j.contains("tail") && !j["tail"].is_null()) {
          require(j["tail"].is_string(), "'tail' must be a string or null");
          text += "(" + j["tail"].get<std::string>() + ")";
        }
        p = Point::shift(SymbolSequence::parse(text));
      } else {
        fail(ErrorKind::InvalidArgument, "shift point must be a string or an object");
      }
      break;
    }
    case Geometry::Product:
      require(j.is_array() && j.size() == 2, "product point must be a two-element array");
      p = Point::pair(point_from_json(system.first(), j[0]), point_from_json(system.second(), j[1]));
      break;
  }
  validate_point(system, p);
  return p;
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back(point_to_json(a));
  Json weights = Json::array();
  for (double w : mu.weights()) weights.push_back(w);
  return Json{{"atoms", atoms}, {"weights", weights}};
}

DiscreteMeasure measure_from_json(const SystemSpec& system, const Json& j) {
  require(j.is_object() && j.contains("atoms") && j.contains("weights") && j["atoms"].is_array() &&
              j["weights"].is_array(),
          "measure must be an object with 'atoms' and 'weights' arrays");
  require(j["atoms"].size() == j["weights"].size(), "atoms and weights differ in length");
  std::vector<Point> atoms;
  std::vector<double> weights;
  for (const auto& a : j["atoms"]) atoms.push_back(point_from_json(system, a));
  for (const auto& w : j["weights"]) {
    require(w.is_number(), "weights must be numbers");
    weights.push_back(w.get<double>());
  }
  return DiscreteMeasure(system, std::move(atoms), std::move(weights));
}

CostMatrix cost_matrix_from_json(const Json& j) {
  require(j.is_array(), "cost matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    require(r.is_array(), "cost matrix rows must be arrays");
    auto& row = rows.emplace_back();
    for (const auto& v : r) {
      require(v.is_number(), "cost matrix entries must be numbers");
      row.push_back(v.get<double>());
    }
  }
  return CostMatrix::from_rows(rows);
}

Json tail_to_json(const TailEstimate& t) {
  Json cps = Json::array();
  for (auto n : t.schedule.checkpoints()) cps.push_back(n);
  return Json{{"checkpoints", cps},
              {"tail_start", t.schedule.tail_start()},
              {"values", t.values},
              {"tail_sup", t.tail_sup},
              {"tail_last", t.tail_last}};
}

Json weyl_to_json(const WeylProfile& w) {
  Json rows = Json::array();
  for (const auto& [l, v] : w.sup_window_avg) rows.push_back(Json{{"window", l}, {"value", v}});
  return Json{{"horizon", w.horizon}, {"windows", rows}};
}

namespace {

std::string preamble(const std::string& metric, const SystemSpec& system, const Json& config) {
  return "# metric=" + metric + " system=" + system_to_json(system).dump() + "\n# config=" +
         config.dump() + "\n";
}

}  // namespace

std::string tail_to_csv(const std::string& metric, const SystemSpec& system, const Json& config,
                        const TailEstimate& t) {
  std::string out = preamble(metric, system, config) + "n,value\n";
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    out += std::to_string(t.schedule.checkpoints()[k]) + "," + format_number(t.values[k]) + "\n";
  }
  return out;
}

std::string weyl_to_csv(const std::string& metric, const SystemSpec& system, const Json& config,
                        const WeylProfile& w) {
  std::string out = preamble(metric, system, config) + "n,value\n";
  for (const auto& [l, v] : w.sup_window_avg) out += std::to_string(l) + "," + format_number(v) + "\n";
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::InvalidArgument, source + ":" + std::to_string(line) + ":" +
                                         std::to_string(column) + ": malformed JSON");
  }
}

}  // namespace orbitmetric
