#include "orbitmetric/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "orbitmetric/errors.hpp"
#include "orbitmetric/matching.hpp"
#include "orbitmetric/sampling.hpp"

#ifndef ORBITMETRIC_VERSION
#define ORBITMETRIC_VERSION "0.0.0"
#endif

namespace orbitmetric {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> DiagnosticReport::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  require(it != columns.end(), "report has no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

namespace {

constexpr std::size_t kMaxWitnesses = 20;

std::size_t shift_symbols(const SystemSpec& system, std::int64_t n) {
  int k = 0;
  if (system.geometry() == Geometry::Product) {
    k = std::max(system.first().shift_horizon(), system.second().shift_horizon());
  } else {
    k = system.shift_horizon();
  }
  return static_cast<std::size_t>(n) + 2 * static_cast<std::size_t>(k);
}

Json schedule_json(const Schedule& s) {
  Json cps = Json::array();
  for (auto n : s.checkpoints()) cps.push_back(n);
  return Json{{"checkpoints", cps}, {"tail_start", s.tail_start()}};
}

Json thresholds_json(VerdictThresholds t) {
  return Json{{"consistent", t.consistent}, {"violated", t.violated}};
}

void check_thresholds(VerdictThresholds t) {
  require(std::isfinite(t.consistent) && std::isfinite(t.violated) && t.consistent >= 0.0 &&
              t.consistent < t.violated,
          "verdict thresholds must satisfy 0 <= consistent < violated");
}

void check_delta(double delta) {
  require(std::isfinite(delta) && delta >= 0.0, "delta must be a finite nonnegative number");
}

std::vector<std::int64_t> normalized_n_list(std::vector<std::int64_t> n_list) {
  require(!n_list.empty(), "n_list must be nonempty");
  for (auto n : n_list) require(n >= 1, "every n in n_list must be at least 1");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  return n_list;
}

Json pair_witness(const Point& x, const Point& y, double value) {
  return Json{{"x", point_to_json(x)}, {"y", point_to_json(y)}, {"value", value}};
}

/// Shared verdict for modulus-type statistics: small relative to delta is
/// consistent, large is a violation witnessed by the offending pairs.
void modulus_verdict(DiagnosticReport& report, double delta, VerdictThresholds t,
                     const PointPairs& pairs, const std::vector<double>& per_pair) {
  const double worst = per_pair.empty() ? 0.0 : *std::max_element(per_pair.begin(), per_pair.end());
  if (pairs.empty()) {
    report.verdict = Verdict::Inconclusive;
  } else if (worst <= std::max(t.consistent, delta)) {
    report.verdict = Verdict::Consistent;
  } else if (worst >= t.violated) {
    report.verdict = Verdict::Violated;
    for (std::size_t i = 0; i < pairs.size() && report.witnesses.size() < kMaxWitnesses; ++i) {
      if (per_pair[i] >= t.violated) {
        report.witnesses.push_back(pair_witness(pairs[i].first, pairs[i].second, per_pair[i]));
      }
    }
  } else {
    report.verdict = Verdict::Inconclusive;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

DiagnosticReport continuity_modulus_pairs(const SystemSpec& system, double delta,
                                          const PointPairs& pairs, const Schedule& schedule,
                                          VerdictThresholds thresholds) {
  check_delta(delta);
  check_thresholds(thresholds);
  DiagnosticReport report;
  report.name = "continuity_modulus";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"delta", delta},
                           {"schedule", schedule_json(schedule)},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"pair", "distance", "ebar_tail_sup", "ebar_tail_last"};

  std::vector<std::optional<TailEstimate>> est(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    est[i] = ebar_estimate(system, pairs[i].first, pairs[i].second, schedule);
  });
  std::vector<double> per_pair;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    per_pair.push_back(est[i]->tail_sup);
    report.rows.push_back({static_cast<double>(i), dist(system, pairs[i].first, pairs[i].second),
                           est[i]->tail_sup, est[i]->tail_last});
  }
  report.summary["modulus"] = per_pair.empty() ? 0.0 : *std::max_element(per_pair.begin(), per_pair.end());
  report.summary["pairs"] = pairs.size();
  modulus_verdict(report, delta, thresholds, pairs, per_pair);
  return report;
}

DiagnosticReport continuity_modulus(const SystemSpec& system, double delta, std::size_t pair_samples,
                                    const Schedule& schedule, std::uint64_t seed,
                                    VerdictThresholds thresholds) {
  check_delta(delta);
  if (delta == 0.0) {
    auto r = continuity_modulus_pairs(system, delta, {}, schedule, thresholds);
    r.parameters["pair_samples"] = pair_samples;
    r.parameters["seed"] = seed;
    return r;
  }
  const auto pairs = sample_close_pairs(system, delta, pair_samples, seed,
                                        shift_symbols(system, schedule.max()));
  auto r = continuity_modulus_pairs(system, delta, pairs, schedule, thresholds);
  r.parameters["pair_samples"] = pair_samples;
  r.parameters["seed"] = seed;
  return r;
}

// ---------------------------------------------------------------------------

DiagnosticReport empirical_equicontinuity_pairs(const SystemSpec& system, double delta,
                                                const PointPairs& pairs,
                                                const std::vector<std::int64_t>& n_list_in,
                                                VerdictThresholds thresholds) {
  check_delta(delta);
  check_thresholds(thresholds);
  const auto n_list = normalized_n_list(n_list_in);
  DiagnosticReport report;
  report.name = "empirical_equicontinuity";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"delta", delta},
                           {"n_list", n_list},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"pair", "n", "distance", "prokhorov"};

  std::vector<std::vector<double>> values(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto sx = orbit_segment(system, pairs[i].first, n_list.back());
    const auto sy = orbit_segment(system, pairs[i].second, n_list.back());
    for (auto n : n_list) {
      const auto m = static_cast<std::size_t>(n);
      values[i].push_back(prokhorov(empirical_measure(sx, m), empirical_measure(sy, m), system));
    }
  });
  std::vector<double> per_pair;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double d = dist(system, pairs[i].first, pairs[i].second);
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      report.rows.push_back({static_cast<double>(i), static_cast<double>(n_list[k]), d, values[i][k]});
    }
    per_pair.push_back(*std::max_element(values[i].begin(), values[i].end()));
  }
  report.summary["max_prokhorov"] =
      per_pair.empty() ? 0.0 : *std::max_element(per_pair.begin(), per_pair.end());
  report.summary["pairs"] = pairs.size();
  modulus_verdict(report, delta, thresholds, pairs, per_pair);
  return report;
}

DiagnosticReport empirical_equicontinuity(const SystemSpec& system, double delta,
                                          std::size_t pair_samples,
                                          const std::vector<std::int64_t>& n_list,
                                          std::uint64_t seed, VerdictThresholds thresholds) {
  check_delta(delta);
  const auto ns = normalized_n_list(n_list);
  PointPairs pairs;
  if (delta > 0.0) pairs = sample_close_pairs(system, delta, pair_samples, seed, shift_symbols(system, ns.back()));
  auto r = empirical_equicontinuity_pairs(system, delta, pairs, ns, thresholds);
  r.parameters["pair_samples"] = pair_samples;
  r.parameters["seed"] = seed;
  return r;
}

// ---------------------------------------------------------------------------

DiagnosticReport unique_ergodicity_points(const SystemSpec& system, const std::vector<Point>& points,
                                          const Schedule& schedule, VerdictThresholds thresholds) {
  check_thresholds(thresholds);
  require(points.size() >= 2, "unique-ergodicity diagnostic needs at least two sample points");
  DiagnosticReport report;
  report.name = "unique_ergodicity";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"schedule", schedule_json(schedule)},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"i", "j", "ebar_tail_sup"};

  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) index.emplace_back(i, j);
  std::vector<double> value(index.size());
  parallel_for(index.size(), [&](std::size_t k) {
    value[k] = ebar_estimate(system, points[index[k].first], points[index[k].second], schedule).tail_sup;
  });

  double diameter = 0.0;
  std::size_t best = 0;
  bool distinct = false;
  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto [i, j] = index[k];
    report.rows.push_back({static_cast<double>(i), static_cast<double>(j), value[k]});
    if (!(points[i] == points[j])) distinct = true;
    if (value[k] > diameter) {
      diameter = value[k];
      best = k;
    }
  }
  report.summary["diameter"] = diameter;
  report.summary["pairs"] = index.size();
  if (!distinct) {
    report.verdict = Verdict::Inconclusive;
  } else if (diameter <= thresholds.consistent) {
    report.verdict = Verdict::Consistent;
  } else if (diameter > thresholds.violated) {
    report.verdict = Verdict::Violated;
    report.witnesses.push_back(pair_witness(points[index[best].first], points[index[best].second], diameter));
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

DiagnosticReport unique_ergodicity_diagnostic(const SystemSpec& system, std::size_t point_samples,
                                              const Schedule& schedule, std::uint64_t seed,
                                              VerdictThresholds thresholds) {
  require(point_samples >= 2, "point_samples must be at least 2");
  auto r = unique_ergodicity_points(
      system, sample_points(system, point_samples, seed, shift_symbols(system, schedule.max())),
      schedule, thresholds);
  r.parameters["point_samples"] = point_samples;
  r.parameters["seed"] = seed;
  return r;
}

// ---------------------------------------------------------------------------

DiagnosticReport omega_distance(const SystemSpec& system, const Point& x, const Point& y,
                                const Schedule& schedule, double cluster_tol) {
  DiagnosticReport report;
  report.name = "omega_distance";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"x", point_to_json(x)},
                           {"y", point_to_json(y)},
                           {"schedule", schedule_json(schedule)},
                           {"cluster_tol", cluster_tol}};
  report.columns = {"n", "cluster_x", "distance_x", "cluster_y", "distance_y"};
  const auto ex = omega_hat_estimate(system, x, schedule, cluster_tol);
  const auto ey = omega_hat_estimate(system, y, schedule, cluster_tol);
  for (std::size_t k = 0; k < ex.trace_n.size(); ++k) {
    report.rows.push_back({static_cast<double>(ex.trace_n[k]), static_cast<double>(ex.cluster_of[k]),
                           ex.distance_to_cluster[k], static_cast<double>(ey.cluster_of[k]),
                           ey.distance_to_cluster[k]});
  }
  const double rho_h = hausdorff_measures(ex.representatives, ey.representatives, system);
  const auto ebar = ebar_estimate(system, x, y, schedule);
  report.summary["rho_h"] = rho_h;
  report.summary["ebar_tail_sup"] = ebar.tail_sup;
  report.summary["representatives_x"] = ex.representatives.size();
  report.summary["representatives_y"] = ey.representatives.size();
  if (ebar.tail_sup <= 0.01 && rho_h > 0.1) {
    report.verdict = Verdict::Violated;
    report.witnesses.push_back(pair_witness(x, y, rho_h));
  } else {
    report.verdict = Verdict::Consistent;
  }
  return report;
}

// ---------------------------------------------------------------------------

DiagnosticReport birkhoff_profile_points(const SystemSpec& system, const std::string& observable,
                                         const std::vector<Point>& points, const Schedule& schedule,
                                         VerdictThresholds thresholds) {
  check_thresholds(thresholds);
  require(!points.empty(), "birkhoff profile needs at least one sample point");
  const Observable f = make_observable(system, observable);
  const std::int64_t horizon = 2 * schedule.max();
  const auto cps = schedule.checkpoints();

  struct PerPoint {
    std::vector<double> average, window_min, window_max;
  };
  std::vector<PerPoint> per(points.size());
  parallel_for(points.size(), [&](std::size_t s) {
    const auto seg = orbit_segment(system, points[s], horizon);
    std::vector<double> prefix(seg.size() + 1, 0.0);
    for (std::size_t k = 0; k < seg.size(); ++k) prefix[k + 1] = prefix[k] + f(seg, k);
    for (auto n : cps) {
      const auto len = static_cast<std::size_t>(n);
      const double nd = static_cast<double>(n);
      per[s].average.push_back(prefix[len] / nd);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t m = 0; m + len <= seg.size(); ++m) {
        const double a = (prefix[m + len] - prefix[m]) / nd;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      per[s].window_min.push_back(lo);
      per[s].window_max.push_back(hi);
    }
  });

  DiagnosticReport report;
  report.name = "birkhoff_profile";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"observable", observable},
                           {"schedule", schedule_json(schedule)},
                           {"weyl_horizon", horizon},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"n", "min", "max", "spread", "sup_abs", "weyl_min", "weyl_max", "weyl_spread"};
  std::size_t argmin = 0, argmax = 0;
  double final_spread = 0.0;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    double lo = per[0].average[k], hi = lo, sup_abs = 0.0;
    double wlo = per[0].window_min[k], whi = per[0].window_max[k];
    std::size_t imin = 0, imax = 0;
    for (std::size_t s = 0; s < points.size(); ++s) {
      const double a = per[s].average[k];
      if (a < lo) lo = a, imin = s;
      if (a > hi) hi = a, imax = s;
      sup_abs = std::max(sup_abs, std::abs(a));
      wlo = std::min(wlo, per[s].window_min[k]);
      whi = std::max(whi, per[s].window_max[k]);
    }
    report.rows.push_back({static_cast<double>(cps[k]), lo, hi, hi - lo, sup_abs, wlo, whi, whi - wlo});
    final_spread = hi - lo;
    argmin = imin;
    argmax = imax;
  }
  report.summary["final_spread"] = final_spread;
  report.summary["final_sup_abs"] = report.rows.back()[4];
  report.summary["final_weyl_spread"] = report.rows.back()[7];
  report.summary["points"] = points.size();
  if (final_spread <= thresholds.consistent) {
    report.verdict = Verdict::Consistent;
  } else if (final_spread >= thresholds.violated) {
    report.verdict = Verdict::Violated;
    report.witnesses.push_back(Json{{"x", point_to_json(points[argmin])}, {"average", report.rows.back()[1]}});
    report.witnesses.push_back(Json{{"x", point_to_json(points[argmax])}, {"average", report.rows.back()[2]}});
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

DiagnosticReport birkhoff_profile(const SystemSpec& system, const std::string& observable,
                                  std::size_t point_samples, const Schedule& schedule,
                                  std::uint64_t seed, VerdictThresholds thresholds) {
  make_observable(system, observable);
  auto r = birkhoff_profile_points(
      system, observable,
      sample_points(system, point_samples, seed, shift_symbols(system, 2 * schedule.max())), schedule,
      thresholds);
  r.parameters["point_samples"] = point_samples;
  r.parameters["seed"] = seed;
  return r;
}

// ---------------------------------------------------------------------------

DiagnosticReport mean_equicontinuity_pairs(const SystemSpec& system, double delta,
                                           const PointPairs& pairs, const Schedule& schedule,
                                           VerdictThresholds thresholds) {
  check_delta(delta);
  check_thresholds(thresholds);
  DiagnosticReport report;
  report.name = "mean_equicontinuity";
  const std::int64_t horizon = 2 * schedule.max();
  report.parameters = Json{{"system", system_to_json(system)},
                           {"delta", delta},
                           {"schedule", schedule_json(schedule)},
                           {"weyl_horizon", horizon},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"pair", "distance", "product_ebar_tail_sup", "besicovitch_tail_sup", "weyl_sup"};

  const SystemSpec product = product_system(system, system);
  std::vector<std::int64_t> windows(schedule.checkpoints().begin() +
                                        static_cast<std::ptrdiff_t>(schedule.tail_start()),
                                    schedule.checkpoints().end());
  std::vector<std::array<double, 3>> value(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto& [x, y] = pairs[i];
    value[i][0] = ebar_estimate(product, Point::pair(x, y), Point::pair(x, x), schedule).tail_sup;
    value[i][1] = besicovitch_estimate(system, x, y, schedule).tail_sup;
    const auto w = weyl_profile(system, x, y, horizon, windows);
    double sup = 0.0;
    for (const auto& [l, v] : w.sup_window_avg) sup = std::max(sup, v);
    value[i][2] = sup;
  });

  std::vector<double> per_pair;
  std::array<double, 3> worst{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    report.rows.push_back({static_cast<double>(i), dist(system, pairs[i].first, pairs[i].second),
                           value[i][0], value[i][1], value[i][2]});
    for (std::size_t c = 0; c < 3; ++c) worst[c] = std::max(worst[c], value[i][c]);
    per_pair.push_back(std::max({value[i][0], value[i][1], value[i][2]}));
  }
  report.summary["product_ebar_modulus"] = worst[0];
  report.summary["besicovitch_modulus"] = worst[1];
  report.summary["weyl_modulus"] = worst[2];
  report.summary["pairs"] = pairs.size();
  modulus_verdict(report, delta, thresholds, pairs, per_pair);
  return report;
}

DiagnosticReport mean_equicontinuity_diagnostic(const SystemSpec& system, double delta,
                                                std::size_t pair_samples, const Schedule& schedule,
                                                std::uint64_t seed, VerdictThresholds thresholds) {
  check_delta(delta);
  PointPairs pairs;
  if (delta > 0.0 && delta <= system.diameter()) {
    pairs = sample_close_pairs(system, delta, pair_samples, seed,
                               shift_symbols(system, 2 * schedule.max()));
  }
  auto r = mean_equicontinuity_pairs(system, delta, pairs, schedule, thresholds);
  r.parameters["pair_samples"] = pair_samples;
  r.parameters["seed"] = seed;
  if (delta > system.diameter()) r.summary["note"] = "delta exceeds the diameter; no constraint";
  return r;
}

// ---------------------------------------------------------------------------

DiagnosticReport en_equicontinuity_pairs(const SystemSpec& system, double delta,
                                         const PointPairs& pairs,
                                         const std::vector<std::int64_t>& n_list_in,
                                         VerdictThresholds thresholds) {
  check_delta(delta);
  check_thresholds(thresholds);
  const auto n_list = normalized_n_list(n_list_in);
  const Schedule schedule(n_list, 0);
  DiagnosticReport report;
  report.name = "en_equicontinuity";
  report.parameters = Json{{"system", system_to_json(system)},
                           {"delta", delta},
                           {"n_list", n_list},
                           {"thresholds", thresholds_json(thresholds)}};
  report.columns = {"pair", "n", "distance", "ebar_n"};
  std::vector<std::optional<TailEstimate>> est(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    est[i] = ebar_estimate(system, pairs[i].first, pairs[i].second, schedule);
  });
  std::vector<double> per_pair;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double d = dist(system, pairs[i].first, pairs[i].second);
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      report.rows.push_back({static_cast<double>(i), static_cast<double>(n_list[k]), d, est[i]->values[k]});
    }
    per_pair.push_back(est[i]->tail_sup);
  }
  report.summary["modulus"] = per_pair.empty() ? 0.0 : *std::max_element(per_pair.begin(), per_pair.end());
  report.summary["pairs"] = pairs.size();
  modulus_verdict(report, delta, thresholds, pairs, per_pair);
  return report;
}

DiagnosticReport en_equicontinuity_diagnostic(const SystemSpec& system, double delta,
                                              std::size_t pair_samples,
                                              const std::vector<std::int64_t>& n_list,
                                              std::uint64_t seed, VerdictThresholds thresholds) {
  check_delta(delta);
  const auto ns = normalized_n_list(n_list);
  PointPairs pairs;
  if (delta > 0.0) pairs = sample_close_pairs(system, delta, pair_samples, seed, shift_symbols(system, ns.back()));
  auto r = en_equicontinuity_pairs(system, delta, pairs, ns, thresholds);
  r.parameters["pair_samples"] = pair_samples;
  r.parameters["seed"] = seed;
  return r;
}

// ---------------------------------------------------------------------------

Example31Config Example31Config::factorial(int n_blocks) {
  require(n_blocks >= 1 && n_blocks <= 20, "n_blocks must lie in [1, 20]");
  Example31Config c;
  c.n_blocks = n_blocks;
  std::int64_t a = 1;
  for (int n = 1; n <= n_blocks; ++n) {
    a *= n;
    c.block_rule.push_back(a);
  }
  return c;
}

DiagnosticReport example31_report(const Example31Config& config) {
  require(config.n_blocks >= 1, "n_blocks must be at least 1");
  require(config.block_rule.size() >= static_cast<std::size_t>(config.n_blocks),
          "block rule has fewer than n_blocks entries");
  require(std::isfinite(config.alpha_step) && config.alpha_step > 0.0 && config.alpha_step <= 1.0,
          "alpha_step must lie in (0, 1]");
  const auto nb = static_cast<std::size_t>(config.n_blocks);
  std::vector<std::int64_t> a(config.block_rule.begin(), config.block_rule.begin() + config.n_blocks);
  std::vector<std::int64_t> b;
  std::int64_t total = 0;
  for (auto len : a) {
    require(len >= 1, "block lengths must be positive");
    require(total <= kAssignmentLimit, "block lengths overflow");
    total += len;
    b.push_back(total);
  }
  if (total > kAssignmentLimit) {
    fail(ErrorKind::SizeLimit, "b_" + std::to_string(nb) + " = " + std::to_string(total) +
                                   " exceeds the exact assignment cap of " +
                                   std::to_string(kAssignmentLimit));
  }

  const SystemSpec system = SystemSpec::binary_shift(config.shift_horizon);
  const Point x = build_example31_point(Example31Variant::U, a, config.n_blocks);
  const Point y = build_example31_point(Example31Variant::V, a, config.n_blocks);
  const auto sx = orbit_segment(system, x, total);
  const auto sy = orbit_segment(system, y, total);
  const CostMatrix full = cost_matrix(sx, sy);

  const Point zero = Point::shift(SymbolSequence::constant(0));
  const Point one = Point::shift(SymbolSequence::constant(1));
  const auto steps = static_cast<int>(std::lround(1.0 / config.alpha_step));
  auto distance_to_segment = [&](const DiscreteMeasure& m, double& best_alpha) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
      const double alpha = std::min(1.0, i * config.alpha_step);
      const auto k = DiscreteMeasure::normalized(system, {zero, one}, {alpha, 1.0 - alpha});
      const double d = prokhorov(m, k, system);
      if (d < best) {
        best = d;
        best_alpha = alpha;
      }
    }
    return best;
  };

  DiagnosticReport report;
  report.name = "example31";
  Json rule = Json::array();
  for (auto v : a) rule.push_back(v);
  report.parameters = Json{{"system", system_to_json(system)},
                           {"block_rule", rule},
                           {"n_blocks", config.n_blocks},
                           {"alpha_step", config.alpha_step},
                           {"cluster_tol", config.cluster_tol},
                           {"x", point_to_json(x)},
                           {"y", point_to_json(y)}};
  report.columns = {"n", "a_n", "b_n", "lower_bound", "ebar_bn", "rho_x_K", "rho_y_K", "alpha_x", "alpha_y"};

  struct Row {
    double bound, ebar, rx, ry, ax, ay;
  };
  std::vector<Row> rows(nb);
  parallel_for(nb, [&](std::size_t k) {
    const auto m = static_cast<std::size_t>(b[k]);
    Row& r = rows[k];
    const double prev = k == 0 ? 0.0 : static_cast<double>(b[k - 1]);
    r.bound = (static_cast<double>(a[k]) - prev) / static_cast<double>(b[k]);
    const CostMatrix block = m == full.size() ? full : full.leading(m);
    r.ebar = min_cost_assignment(block).total_cost / static_cast<double>(m);
    r.rx = distance_to_segment(empirical_measure(sx, m), r.ax);
    r.ry = distance_to_segment(empirical_measure(sy, m), r.ay);
  });

  std::vector<std::size_t> failed;
  for (std::size_t k = 0; k < nb; ++k) {
    const Row& r = rows[k];
    report.rows.push_back({static_cast<double>(k + 1), static_cast<double>(a[k]),
                           static_cast<double>(b[k]), r.bound, r.ebar, r.rx, r.ry, r.ax, r.ay});
    if (r.ebar < r.bound) failed.push_back(k);
  }

  const Schedule schedule(b, nb >= 2 ? nb - 2 : 0);
  const auto ox = omega_hat_estimate(system, x, schedule, config.cluster_tol);
  const auto oy = omega_hat_estimate(system, y, schedule, config.cluster_tol);
  double ebar_tail = 0.0;
  for (std::size_t k = schedule.tail_start(); k < nb; ++k) ebar_tail = std::max(ebar_tail, rows[k].ebar);

  report.summary["final_lower_bound"] = rows.back().bound;
  report.summary["final_ebar"] = rows.back().ebar;
  report.summary["rho_x_K"] = rows.back().rx;
  report.summary["rho_y_K"] = rows.back().ry;
  report.summary["rho_h"] = hausdorff_measures(ox.representatives, oy.representatives, system);
  report.summary["ebar_tail_sup"] = ebar_tail;
  report.summary["precision"] = precision_bound(system);

  if (failed.empty()) {
    report.verdict = Verdict::Consistent;
  } else {
    report.verdict = Verdict::Violated;
    for (auto k : failed) {
      report.witnesses.push_back(Json{{"n", k + 1}, {"ebar_bn", rows[k].ebar}, {"lower_bound", rows[k].bound}});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Json report_to_json(const DiagnosticReport& report, const Json& config) {
  Json rows = Json::array();
  for (const auto& r : report.rows) rows.push_back(r);
  return Json{{"name", report.name},
              {"version", ORBITMETRIC_VERSION},
              {"config", config},
              {"parameters", report.parameters},
              {"observations", Json{{"columns", report.columns}, {"rows", rows}}},
              {"summary", report.summary},
              {"verdict", to_string(report.verdict)},
              {"witnesses", report.witnesses}};
}

std::string report_to_csv(const DiagnosticReport& report, const Json& config) {
  std::string out = "# metric=" + report.name + " system=" +
                    (report.parameters.contains("system") ? report.parameters["system"].dump() : "null") +
                    "\n# config=" + config.dump() + "\n# verdict=" + to_string(report.verdict) +
                    " summary=" + report.summary.dump() + "\n";
  for (std::size_t c = 0; c < report.columns.size(); ++c) out += (c ? "," : "") + report.columns[c];
  out += "\n";
  for (const auto& r : report.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "," : "") + format_number(r[c]);
    out += "\n";
  }
  return out;
}

}  // namespace orbitmetric
