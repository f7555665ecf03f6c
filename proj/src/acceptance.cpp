#include "orbitmetric/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "orbitmetric/analysis.hpp"
#include "orbitmetric/errors.hpp"
#include "orbitmetric/json_io.hpp"
#include "orbitmetric/matching.hpp"
#include "orbitmetric/measures.hpp"
#include "orbitmetric/pseudometrics.hpp"
#include "orbitmetric/sampling.hpp"
#include "orbitmetric/systems.hpp"

namespace orbitmetric {

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Check {
  bool ok = true;
  std::string detail;
};

std::vector<SystemSpec> identity_systems() {
  const SystemSpec rot = SystemSpec::circle_rotation(kGolden);
  return {rot, SystemSpec::binary_shift(), SystemSpec::doubling_map(), product_system(rot, rot)};
}

CostMatrix random_cost(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> e(n * n);
  for (double& v : e) v = uniform01(rng);
  return CostMatrix(n, std::move(e));
}

Check assignment_oracle() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
    const CostMatrix c = random_cost(rng, n);
    worst = std::max(worst, std::abs(min_cost_assignment(c).total_cost - brute_force_assignment(c).total_cost));
  }
  return {worst <= 1e-12, "200 matrices, n in 2..7, max |hungarian - brute force| = " + num(worst)};
}

Check wasserstein_identity() {
  double worst = 0.0;
  for (const auto& system : identity_systems()) {
    for (int t = 0; t < 100; ++t) {
      auto rng = stream_rng(202, static_cast<std::uint64_t>(t));
      const std::int64_t n = 1 + t % 50;
      const std::size_t symbols = static_cast<std::size_t>(n) + 64;
      const Point x = sample_point(system, rng, symbols);
      const Point y = sample_point(system, rng, symbols);
      const auto sx = orbit_segment(system, x, n);
      const auto sy = orbit_segment(system, y, n);
      const double assignment = min_cost_assignment(cost_matrix(sx, sy)).total_cost;
      const double w1 = wasserstein1(empirical_measure(sx), empirical_measure(sy), system);
      worst = std::max(worst, std::abs(static_cast<double>(n) * w1 - assignment));
    }
  }
  return {worst <= 1e-9, "4 systems x 100 pairs, n in 1..50, max |n W1 - assignment| = " + num(worst)};
}

Check fast_path() {
  double worst = 0.0;
  const SystemSpec line = SystemSpec::tent_map();
  const SystemSpec circle = SystemSpec::circle_rotation(kGolden);
  for (const auto* system : {&line, &circle}) {
    for (int t = 0; t < 100; ++t) {
      auto rng = stream_rng(303, static_cast<std::uint64_t>(t));
      auto random_measure = [&] {
        std::vector<Point> atoms;
        std::vector<double> w;
        for (int k = 0; k < 50; ++k) {
          atoms.push_back(sample_point(*system, rng, 0));
          w.push_back(0.05 + uniform01(rng));
        }
        return DiscreteMeasure::normalized(*system, std::move(atoms), std::move(w));
      };
      const auto mu = random_measure();
      const auto nu = random_measure();
      const auto geom = system == &line ? Geometry1D::Line : Geometry1D::Circle;
      worst = std::max(worst, std::abs(wasserstein1_fast_1d(mu, nu, geom) - wasserstein1(mu, nu, *system)));
    }
  }
  return {worst <= 1e-9, "100 pairs each on line and circle, 50 atoms, max |fast - transport| = " + num(worst)};
}

Check prokhorov_flow() {
  const std::vector<SystemSpec> systems{SystemSpec::circle_rotation(kGolden), SystemSpec::tent_map(),
                                        SystemSpec::binary_shift(8)};
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const SystemSpec& system = systems[static_cast<std::size_t>(t) % systems.size()];
    auto rng = stream_rng(404, static_cast<std::uint64_t>(t));
    auto random_measure = [&] {
      const int k = 1 + static_cast<int>(rng() % 8);
      std::vector<Point> atoms;
      std::vector<double> w;
      for (int i = 0; i < k; ++i) {
        atoms.push_back(sample_point(system, rng, 8));
        w.push_back(uniform01(rng) + 0.01);
      }
      return DiscreteMeasure::normalized(system, std::move(atoms), std::move(w));
    };
    const auto mu = random_measure();
    const auto nu = random_measure();
    worst = std::max(worst, std::abs(prokhorov(mu, nu, system) - prokhorov_oracle(mu, nu, system)));
  }
  bool dirac_exact = true;
  for (int t = 0; t < 60; ++t) {
    const SystemSpec& system = systems[static_cast<std::size_t>(t) % systems.size()];
    auto rng = stream_rng(405, static_cast<std::uint64_t>(t));
    const Point x = sample_point(system, rng, 8);
    const Point y = sample_point(system, rng, 8);
    const double expected = std::min(dist(system, x, y), 1.0);
    dirac_exact &= prokhorov(DiscreteMeasure::dirac(system, x), DiscreteMeasure::dirac(system, y), system) == expected;
  }
  return {worst <= 1e-9 && dirac_exact,
          "100 pairs <= 8 atoms, max |flow - oracle| = " + num(worst) +
              "; Dirac pairs equal min(d,1): " + (dirac_exact ? "yes" : "no")};
}

Check sandwich() {
  std::size_t checked = 0, failed = 0;
  for (const auto& system : identity_systems()) {
    for (int t = 0; t < 100; ++t) {
      auto rng = stream_rng(505, static_cast<std::uint64_t>(t));
      const Point x = sample_point(system, rng, 200);
      const Point y = sample_point(system, rng, 200);
      for (double delta : {0.1, 0.3}) {
        for (std::int64_t n : {10, 100}) {
          ++checked;
          if (!sandwich_check(system, x, y, n, delta).holds) ++failed;
        }
      }
    }
  }
  return {failed == 0, std::to_string(checked) + " instances across 4 systems, failures = " + std::to_string(failed)};
}

Check example31() {
  const auto r = example31_report(Example31Config::factorial(6));
  const auto b = r.column("b_n");
  const auto bound = r.column("lower_bound");
  const auto ebar = r.column("ebar_bn");
  const std::vector<double> expected_b{1, 3, 9, 33, 153, 873};
  bool ok = b == expected_b;
  const std::vector<double> expected_bound{1.0 / 3.0, 3.0 / 9.0, 15.0 / 33.0, 87.0 / 153.0, 567.0 / 873.0};
  for (std::size_t k = 1; k < 6; ++k) ok &= ebar[k] >= bound[k] && bound[k] == expected_bound[k - 1];
  const double rx = r.summary["rho_x_K"].get<double>();
  const double ry = r.summary["rho_y_K"].get<double>();
  const double rho_h = r.summary["rho_h"].get<double>();
  const double tail = r.summary["ebar_tail_sup"].get<double>();
  ok &= bound[5] == 63.0 / 97.0 && std::abs(bound[5] - 0.6495) < 5e-5 && ebar[5] >= 0.6495 && rx <= 0.1 && ry <= 0.1 && rho_h <= 0.15 && tail >= 0.64;
  return {ok, "b = (1,3,9,33,153,873), Ebar_b6 = " + num(ebar[5]) + " >= bound 63/97 = " + num(bound[5]) +
                  ", rho(x,K) = " + num(rx) + ", rho(y,K) = " + num(ry) + ", rho_H = " + num(rho_h) +
                  ", Ebar tail = " + num(tail)};
}

Check isometry() {
  const SystemSpec rot = SystemSpec::circle_rotation(kGolden);
  const Schedule base = Schedule::geometric(10000);
  std::vector<std::int64_t> points(base.checkpoints().begin(), base.checkpoints().end());
  if (points.back() != 10000) points.push_back(10000);
  const Schedule schedule(points, 0);
  const auto pairs = sample_close_pairs(rot, 0.05, 100, 707, 0);
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    worst = std::max(worst, ebar_estimate(rot, x, y, schedule).tail_sup);
  }
  return {worst <= 0.05 + 1e-9, "100 pairs with d <= 0.05, " + std::to_string(points.size()) +
                                    " checkpoints up to 10^4, max Ebar_n = " + num(worst)};
}

Check unique_ergodicity() {
  const SystemSpec rot = SystemSpec::circle_rotation(kGolden);
  const auto r = unique_ergodicity_diagnostic(rot, 20, Schedule({10000}, 0), 808);
  const double diam = r.summary["diameter"].get<double>();
  const auto s = unique_ergodicity_diagnostic(SystemSpec::binary_shift(), 6, Schedule({100}, 0), 809);
  const double shift_diam = s.summary["diameter"].get<double>();
  bool witnessed = false;
  if (!s.witnesses.empty()) {
    const auto& w = s.witnesses[0];
    witnessed = w["x"] == "(0)" && w["y"] == "(1)";
  }
  return {diam <= 0.02 && shift_diam == 1.0 && witnessed,
          "rotation diameter at n = 10^4: " + num(diam) + "; shift diameter " + num(shift_diam) +
              (witnessed ? " witnessed by (0..., 1...)" : " without the expected witness")};
}

Check discontinuity() {
  const SystemSpec shift = SystemSpec::binary_shift();
  const Point x = Point::shift(SymbolSequence::constant(0));
  const Point y = Point::shift(SymbolSequence::parse("0000000000(1)"));
  const double v = ebar_n(shift, x, y, 500);
  return {v >= 0.98, "Ebar_500(0..., 0^10 1...) = " + num(v)};
}

Check birkhoff() {
  const SystemSpec rot = SystemSpec::circle_rotation(kGolden);
  const auto r = birkhoff_profile(rot, "cos2pi", 1000, Schedule({1000}, 0), 1010);
  const double sup_abs = r.summary["final_sup_abs"].get<double>();
  const auto s = birkhoff_profile(SystemSpec::binary_shift(), "first_symbol", 20, Schedule::geometric(200), 1011);
  const auto spread = s.column("spread");
  const bool all_one = std::all_of(spread.begin(), spread.end(), [](double v) { return v == 1.0; });
  return {sup_abs <= 0.002 && all_one, "rotation sup |A_1000 cos2pi| = " + num(sup_abs) +
                                           "; shift first-symbol spread 1 at all " +
                                           std::to_string(spread.size()) + " checkpoints: " +
                                           (all_one ? "yes" : "no")};
}

Check birkhoff_von_neumann() {
  double worst_err = 0.0, worst_sum = 0.0;
  bool counts_ok = true;
  for (int t = 0; t < 100; ++t) {
    auto rng = stream_rng(1111, static_cast<std::uint64_t>(t));
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const int terms = 1 + static_cast<int>(rng() % 12);
    std::vector<double> weights(static_cast<std::size_t>(terms));
    for (double& w : weights) w = uniform01(rng) + 0.01;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<double> m(n * n, 0.0);
    std::vector<int> perm(n);
    for (int k = 0; k < terms; ++k) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < n; ++i) m[i * n + static_cast<std::size_t>(perm[i])] += weights[static_cast<std::size_t>(k)] / total;
    }
    const auto dec = birkhoff_decompose(BistochasticMatrix(n, m));
    const auto back = dec.reconstruct(n);
    for (std::size_t i = 0; i < m.size(); ++i) worst_err = std::max(worst_err, std::abs(back[i] - m[i]));
    worst_sum = std::max(worst_sum, std::abs(dec.weight_sum() - 1.0));
    counts_ok &= dec.terms.size() <= (n - 1) * (n - 1) + 1;
  }
  return {worst_err <= 1e-7 && worst_sum <= 1e-9 && counts_ok,
          "100 matrices n <= 8, max reconstruction error " + num(worst_err) + ", max |weight sum - 1| " +
              num(worst_sum) + ", term bound respected: " + (counts_ok ? "yes" : "no")};
}

Check pseudometric_properties() {
  const auto systems = identity_systems();
  bool symmetric = true;
  double triangle_excess = -1.0;
  std::size_t dominance_failures = 0;
  const Schedule schedule({5, 10, 20, 40}, 2);
  for (int t = 0; t < 200; ++t) {
    const SystemSpec& system = systems[static_cast<std::size_t>(t) % systems.size()];
    auto rng = stream_rng(1212, static_cast<std::uint64_t>(t));
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 60);
    const std::size_t symbols = 200;
    const Point x = sample_point(system, rng, symbols);
    const Point y = sample_point(system, rng, symbols);
    const Point z = sample_point(system, rng, symbols);
    const double xy = ebar_n(system, x, y, n);
    const double yz = ebar_n(system, y, z, n);
    const double xz = ebar_n(system, x, z, n);
    symmetric &= xy == ebar_n(system, y, x, n) && yz == ebar_n(system, z, y, n) && xz == ebar_n(system, z, x, n);
    triangle_excess = std::max({triangle_excess, xz - xy - yz, xy - xz - yz, yz - xy - xz});

    for (const auto& [p, q] : {std::pair{x, y}, std::pair{y, z}}) {
      const auto e = ebar_estimate(system, p, q, schedule);
      const auto b = besicovitch_estimate(system, p, q, schedule);
      const std::vector<std::int64_t> windows(schedule.checkpoints().begin(), schedule.checkpoints().end());
      const auto w = weyl_profile(system, p, q, 2 * schedule.max(), windows);
      for (std::size_t k = 0; k < schedule.size(); ++k) {
        const auto len = schedule.checkpoints()[k];
        if (e.values[k] > b.values[k] + 1e-12) ++dominance_failures;
        if (b.values[k] > w.sup_window_avg.at(len)) ++dominance_failures;
      }
    }
  }
  return {symmetric && triangle_excess <= 1e-9 && dominance_failures == 0,
          std::string("200 triples: symmetry exact ") + (symmetric ? "yes" : "no") +
              ", max triangle excess " + num(triangle_excess) + ", dominance failures " +
              std::to_string(dominance_failures)};
}

std::string run_diagnostics_to_text(std::uint64_t seed) {
  const Json config{{"seed", seed}};
  std::string out;
  const auto a = continuity_modulus(SystemSpec::binary_shift(), 0x1.0p-6, 8, Schedule::geometric(100), seed);
  out += report_to_csv(a, config) + report_to_json(a, config).dump(2);
  const auto b = birkhoff_profile(SystemSpec::circle_rotation(kGolden), "cos2pi", 50, Schedule::geometric(300), seed);
  out += report_to_csv(b, config) + report_to_json(b, config).dump(2);
  const auto c = empirical_equicontinuity(SystemSpec::circle_rotation(kGolden), 0.01, 4, {10, 50}, seed);
  out += report_to_csv(c, config) + report_to_json(c, config).dump(2);
  return out;
}

std::string write_and_read(const std::filesystem::path& path, const std::string& text) {
  {
    std::ofstream f(path, std::ios::binary);
    f << text;
  }
  std::ifstream f(path, std::ios::binary);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

Check determinism() {
  namespace fs = std::filesystem;
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  const fs::path dir = fs::temp_directory_path() / ("orbitmetric-determinism-" + std::to_string(stamp));
  fs::create_directories(dir);
  const std::string first = write_and_read(dir / "run1.txt", run_diagnostics_to_text(1313));
  const std::string second = write_and_read(dir / "run2.txt", run_diagnostics_to_text(1313));
  const std::string other = run_diagnostics_to_text(1314);
  fs::remove_all(dir);
  const bool same = first == second && !first.empty();
  return {same && other != first, std::string("two runs with seed 1313 byte-identical: ") +
                                      (same ? "yes" : "no") + " (" + std::to_string(first.size()) +
                                      " bytes); different seed differs: " + (other != first ? "yes" : "no")};
}

struct Criterion {
  const char* name;
  double budget;
  std::function<Check()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"assignment oracle equivalence", 5, assignment_oracle},
      {"assignment equals n * W1 of empirical measures", 30, wasserstein_identity},
      {"1-D fast path equals general transport", 5, fast_path},
      {"Prokhorov flow solver equals subset oracle", 30, prokhorov_flow},
      {"sandwich inequality between Delta_n and Ebar_n", 10, sandwich},
      {"block counterexample: bounds, projection to K, omega-hat", 60, example31},
      {"isometry Ebar-continuity on the golden rotation", 10, isometry},
      {"unique ergodicity surrogate", 20, unique_ergodicity},
      {"Ebar-discontinuity of the shift", 10, discontinuity},
      {"uniform Birkhoff averages", 10, birkhoff},
      {"Birkhoff-von Neumann decomposition", 5, birkhoff_von_neumann},
      {"pseudo-metric properties and dominance chain", 30, pseudometric_properties},
      {"determinism under a fixed seed", 60, determinism},
  };
  return all;
}

}  // namespace

CriterionResult run_criterion(int id) {
  require(id >= 1 && id <= kCriterionCount, "criterion id out of range");
  const Criterion& criterion = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = criterion.name;
  r.budget_seconds = criterion.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Check c = criterion.run();
    r.passed = c.ok;
    r.detail = c.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds >= r.budget_seconds) {
    r.passed = false;
    r.detail += "; runtime budget exceeded";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(std::ostream* out) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id));
    if (out) *out << format_result(results.back()) << '\n' << std::flush;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.budget_seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + (r.id < 10 ? " " : "") + std::to_string(r.id) +
         "] " + r.name + ": " + r.detail + " (" + timing + ")";
}

}  // namespace orbitmetric
