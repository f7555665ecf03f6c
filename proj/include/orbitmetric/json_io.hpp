#pragma once

#include <string>

#include <json.hpp>

#include "orbitmetric/cost_matrix.hpp"
#include "orbitmetric/measures.hpp"
#include "orbitmetric/pseudometrics.hpp"
#include "orbitmetric/systems.hpp"

namespace orbitmetric {

using Json = nlohmann::ordered_json;

/// {"kind": "circle_rotation", "alpha": 0.618..., "shift_horizon": 30}; products
/// nest their factors under "first" and "second".
Json system_to_json(const SystemSpec& system);
SystemSpec system_from_json(const Json& j);

/// Scalars: a number or a rational string "p/q". Shifts: "0000(1)" or
/// {"prefix": "0000", "tail": "1"}. Products: a two-element array.
Json point_to_json(const Point& p);
Point point_from_json(const SystemSpec& system, const Json& j);

Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const SystemSpec& system, const Json& j);

CostMatrix cost_matrix_from_json(const Json& j);

Json tail_to_json(const TailEstimate& t);
Json weyl_to_json(const WeylProfile& w);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// "# metric=<name> system=<json>" and "# config=<json>" preamble lines,
/// then a header and one row per line.
std::string tail_to_csv(const std::string& metric, const SystemSpec& system, const Json& config,
                        const TailEstimate& t);
std::string weyl_to_csv(const std::string& metric, const SystemSpec& system, const Json& config,
                        const WeylProfile& w);

/// Parses JSON text; malformed input raises invalid-argument naming the line
/// and column.
Json parse_json_text(const std::string& text, const std::string& source);

}  // namespace orbitmetric
