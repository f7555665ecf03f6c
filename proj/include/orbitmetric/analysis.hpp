#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbitmetric/json_io.hpp"
#include "orbitmetric/measures.hpp"
#include "orbitmetric/pseudometrics.hpp"
#include "orbitmetric/systems.hpp"

namespace orbitmetric {

enum class Verdict { Consistent, Violated, Inconclusive };

std::string to_string(Verdict v);

struct DiagnosticReport {
  std::string name;
  Json parameters = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  Json summary = Json::object();
  Verdict verdict = Verdict::Inconclusive;
  Json witnesses = Json::array();

  /// Value of `column` in every row.
  std::vector<double> column(const std::string& column) const;
};

/// Conventional cut-offs: a statistic at or below `consistent` is read as
/// consistent with the property, at or above `violated` as a violation.
struct VerdictThresholds {
  double consistent = 0.02;
  double violated = 0.2;
};

using PointPairs = std::vector<std::pair<Point, Point>>;

/// Close pairs are those with d(x, y) <= delta.
DiagnosticReport continuity_modulus(const SystemSpec& system, double delta, std::size_t pair_samples,
                                    const Schedule& schedule, std::uint64_t seed,
                                    VerdictThresholds thresholds = {});
DiagnosticReport continuity_modulus_pairs(const SystemSpec& system, double delta,
                                          const PointPairs& pairs, const Schedule& schedule,
                                          VerdictThresholds thresholds = {});

DiagnosticReport empirical_equicontinuity(const SystemSpec& system, double delta,
                                          std::size_t pair_samples,
                                          const std::vector<std::int64_t>& n_list,
                                          std::uint64_t seed, VerdictThresholds thresholds = {});
DiagnosticReport empirical_equicontinuity_pairs(const SystemSpec& system, double delta,
                                                const PointPairs& pairs,
                                                const std::vector<std::int64_t>& n_list,
                                                VerdictThresholds thresholds = {});

DiagnosticReport unique_ergodicity_diagnostic(const SystemSpec& system, std::size_t point_samples,
                                              const Schedule& schedule, std::uint64_t seed,
                                              VerdictThresholds thresholds = {});
DiagnosticReport unique_ergodicity_points(const SystemSpec& system, const std::vector<Point>& points,
                                          const Schedule& schedule, VerdictThresholds thresholds = {});

DiagnosticReport omega_distance(const SystemSpec& system, const Point& x, const Point& y,
                                const Schedule& schedule, double cluster_tol = kDefaultClusterTol);

DiagnosticReport birkhoff_profile(const SystemSpec& system, const std::string& observable,
                                  std::size_t point_samples, const Schedule& schedule,
                                  std::uint64_t seed, VerdictThresholds thresholds = {});
DiagnosticReport birkhoff_profile_points(const SystemSpec& system, const std::string& observable,
                                         const std::vector<Point>& points, const Schedule& schedule,
                                         VerdictThresholds thresholds = {});

/// Product-system modulus for pairs ((x, y), (x, x)) next to the Besicovitch
/// tail and the Weyl window sup of (x, y).
DiagnosticReport mean_equicontinuity_diagnostic(const SystemSpec& system, double delta,
                                                std::size_t pair_samples, const Schedule& schedule,
                                                std::uint64_t seed, VerdictThresholds thresholds = {});
DiagnosticReport mean_equicontinuity_pairs(const SystemSpec& system, double delta,
                                           const PointPairs& pairs, const Schedule& schedule,
                                           VerdictThresholds thresholds = {});

DiagnosticReport en_equicontinuity_diagnostic(const SystemSpec& system, double delta,
                                              std::size_t pair_samples,
                                              const std::vector<std::int64_t>& n_list,
                                              std::uint64_t seed, VerdictThresholds thresholds = {});
DiagnosticReport en_equicontinuity_pairs(const SystemSpec& system, double delta,
                                         const PointPairs& pairs,
                                         const std::vector<std::int64_t>& n_list,
                                         VerdictThresholds thresholds = {});

struct Example31Config {
  std::vector<std::int64_t> block_rule;  // a_1, a_2, ...
  int n_blocks = 6;
  int shift_horizon = kDefaultShiftHorizon;
  double alpha_step = 0.01;
  double cluster_tol = kDefaultClusterTol;

  /// a_n = n! for n = 1 .. n_blocks.
  static Example31Config factorial(int n_blocks);
};

DiagnosticReport example31_report(const Example31Config& config);

/// {name, version, config, observations: {columns, rows}, summary, verdict, witnesses}.
Json report_to_json(const DiagnosticReport& report, const Json& config);
/// Preamble lines, header row, one line per observation row.
std::string report_to_csv(const DiagnosticReport& report, const Json& config);

}  // namespace orbitmetric
