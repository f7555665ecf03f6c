#include "orbitmetric/pseudometrics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "orbitmetric/errors.hpp"
#include "orbitmetric/matching.hpp"

namespace orbitmetric {

namespace {

constexpr std::size_t kEdgeCap = 50'000'000;

void require_length(std::int64_t n) {
  require(n >= 1, "orbit length n must be at least 1");
}

void check_point(const SystemSpec& system, const Point& p) { validate_point(system, p); }

Geometry1D geometry_1d(const SystemSpec& system) {
  return system.geometry() == Geometry::Circle ? Geometry1D::Circle : Geometry1D::Line;
}

double fast_w1(const OrbitSegment& a, const OrbitSegment& b, std::size_t m) {
  const std::vector<double> w(m, 1.0 / static_cast<double>(m));
  return wasserstein1_1d(a.coordinates().first(m), w, b.coordinates().first(m), w,
                         geometry_1d(a.system()));
}

EbarPath resolve_path(const SystemSpec& system, EbarPath path, std::int64_t n) {
  if (path == EbarPath::Auto) path = system.is_scalar() ? EbarPath::Transport1D : EbarPath::Assignment;
  if (path == EbarPath::Transport1D) {
    require(system.is_scalar(), "the 1-D transport path needs a circle or interval system");
  }
  if (path == EbarPath::Assignment && n > kAssignmentLimit) {
    fail(ErrorKind::SizeLimit,
         "assignment path is limited to n <= " + std::to_string(kAssignmentLimit) +
             (system.is_scalar() ? "; use the 1-D transport path for larger n"
                                 : "; no fast path exists for this system"));
  }
  return path;
}

std::pair<OrbitSegment, OrbitSegment> oriented_segments(const SystemSpec& system, const Point& x,
                                                        const Point& y, std::int64_t n) {
  check_point(system, x);
  check_point(system, y);
  const bool swap = point_less(y, x);
  const Point& a = swap ? y : x;
  const Point& b = swap ? x : y;
  return {orbit_segment(system, a, n), orbit_segment(system, b, n)};
}

std::vector<double> pointwise_distances(const SystemSpec& system, const Point& x, const Point& y,
                                        std::int64_t n) {
  auto [sx, sy] = oriented_segments(system, x, y, n);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = segment_distance(sx, k, sy, k);
  return d;
}

BipartiteGraph threshold_graph(const OrbitSegment& a, const OrbitSegment& b, std::size_t n,
                               double delta) {
  BipartiteGraph g;
  g.left = n;
  g.right = n;
  g.offsets.assign(n + 1, 0);

  auto push = [&](int j) {
    g.targets.push_back(j);
    if (g.targets.size() > kEdgeCap) {
      fail(ErrorKind::SizeLimit, "threshold graph exceeds " + std::to_string(kEdgeCap) + " edges");
    }
  };

  if (a.system().is_scalar()) {
    const bool circle = a.system().geometry() == Geometry::Circle;
    std::vector<std::pair<double, int>> sorted;
    sorted.reserve(circle ? 3 * n : n);
    const auto cy = b.coordinates();
    for (std::size_t j = 0; j < n; ++j) {
      sorted.emplace_back(cy[j], static_cast<int>(j));
      if (circle) {
        sorted.emplace_back(cy[j] - 1.0, static_cast<int>(j));
        sorted.emplace_back(cy[j] + 1.0, static_cast<int>(j));
      }
    }
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> stamp(n, SIZE_MAX);
    const auto cx = a.coordinates();
    for (std::size_t i = 0; i < n; ++i) {
      // Widen by a relative margin; membership is decided by the exact distance.
      const double margin = 4 * DBL_EPSILON;
      auto lo = std::lower_bound(sorted.begin(), sorted.end(),
                                 std::make_pair(cx[i] - delta - margin, INT32_MIN));
      for (auto it = lo; it != sorted.end() && it->first <= cx[i] + delta + margin; ++it) {
        const int j = it->second;
        if (stamp[j] == i) continue;
        if (segment_distance(a, i, b, static_cast<std::size_t>(j)) <= delta) {
          stamp[j] = i;
          push(j);
        }
      }
      g.offsets[i + 1] = g.targets.size();
    }
    return g;
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (segment_distance(a, i, b, j) <= delta) push(static_cast<int>(j));
    }
    g.offsets[i + 1] = g.targets.size();
  }
  return g;
}

std::int64_t delta_count(const OrbitSegment& a, const OrbitSegment& b, std::size_t n,
                         double delta) {
  const auto match = maximum_matching(threshold_graph(a, b, n, delta));
  const auto matched = std::count_if(match.begin(), match.end(), [](int v) { return v >= 0; });
  return static_cast<std::int64_t>(n) - static_cast<std::int64_t>(matched);
}

}  // namespace

TailEstimate make_tail_estimate(Schedule schedule, std::vector<double> values) {
  require(values.size() == schedule.size(), "one value per checkpoint is required");
  TailEstimate t{std::move(schedule), std::move(values), 0.0, 0.0};
  t.tail_sup = *std::max_element(t.values.begin() + static_cast<std::ptrdiff_t>(t.schedule.tail_start()),
                                 t.values.end());
  t.tail_last = t.values.back();
  return t;
}

bool point_less(const Point& a, const Point& b) {
  if (a.is_pair() && b.is_pair()) {
    if (point_less(a.first(), b.first())) return true;
    if (point_less(b.first(), a.first())) return false;
    return point_less(a.second(), b.second());
  }
  if (a.is_scalar() && b.is_scalar()) return a.coordinate() < b.coordinate();
  if (a.is_shift() && b.is_shift()) return a.symbols().to_string() < b.symbols().to_string();
  return false;
}

double ebar_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n,
              EbarPath path) {
  require_length(n);
  path = resolve_path(system, path, n);
  auto [sx, sy] = oriented_segments(system, x, y, n);
  const auto m = static_cast<std::size_t>(n);
  if (path == EbarPath::Transport1D) return fast_w1(sx, sy, m);
  return min_cost_assignment(cost_matrix(sx, sy)).total_cost / static_cast<double>(n);
}

TailEstimate ebar_estimate(const SystemSpec& system, const Point& x, const Point& y,
                           const Schedule& schedule, EbarPath path) {
  const std::int64_t n_max = schedule.max();
  path = resolve_path(system, path, n_max);
  auto [sx, sy] = oriented_segments(system, x, y, n_max);
  std::vector<double> values;
  values.reserve(schedule.size());
  if (path == EbarPath::Transport1D) {
    for (std::int64_t n : schedule.checkpoints()) values.push_back(fast_w1(sx, sy, static_cast<std::size_t>(n)));
  } else {
    const CostMatrix full = cost_matrix(sx, sy);
    for (std::int64_t n : schedule.checkpoints()) {
      const auto m = static_cast<std::size_t>(n);
      const CostMatrix block = m == full.size() ? full : full.leading(m);
      values.push_back(min_cost_assignment(block).total_cost / static_cast<double>(n));
    }
  }
  return make_tail_estimate(schedule, std::move(values));
}

double besicovitch_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n) {
  require_length(n);
  const auto d = pointwise_distances(system, x, y, n);
  double sum = 0.0;
  for (double v : d) sum += v;
  return sum / static_cast<double>(n);
}

TailEstimate besicovitch_estimate(const SystemSpec& system, const Point& x, const Point& y,
                                  const Schedule& schedule) {
  const auto d = pointwise_distances(system, x, y, schedule.max());
  std::vector<double> values;
  double sum = 0.0;
  std::size_t k = 0;
  for (std::int64_t n : schedule.checkpoints()) {
    for (; k < static_cast<std::size_t>(n); ++k) sum += d[k];
    values.push_back(sum / static_cast<double>(n));
  }
  return make_tail_estimate(schedule, std::move(values));
}

WeylProfile weyl_profile(const SystemSpec& system, const Point& x, const Point& y,
                         std::int64_t horizon, const std::vector<std::int64_t>& window_lengths) {
  require_length(horizon);
  require(!window_lengths.empty(), "at least one window length is required");
  for (std::int64_t l : window_lengths) {
    require(l >= 1 && l <= horizon, "window lengths must lie in [1, horizon]");
  }
  const auto d = pointwise_distances(system, x, y, horizon);
  std::vector<double> prefix(d.size() + 1, 0.0);
  for (std::size_t k = 0; k < d.size(); ++k) prefix[k + 1] = prefix[k] + d[k];

  WeylProfile out;
  out.horizon = horizon;
  out.window_lengths = window_lengths;
  for (std::int64_t l : window_lengths) {
    const auto len = static_cast<std::size_t>(l);
    double best = 0.0;
    for (std::size_t m = 0; m + len <= d.size(); ++m) {
      best = std::max(best, (prefix[m + len] - prefix[m]) / static_cast<double>(l));
    }
    out.sup_window_avg[l] = best;
  }
  return out;
}

std::int64_t delta_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n,
                     double delta) {
  require_length(n);
  require(std::isfinite(delta) && delta >= 0.0, "delta must be a finite nonnegative number");
  auto [sx, sy] = oriented_segments(system, x, y, n);
  return delta_count(sx, sy, static_cast<std::size_t>(n), delta);
}

EtildeEstimate etilde_estimate(const SystemSpec& system, const Point& x, const Point& y,
                               const Schedule& schedule, const std::vector<double>& eps_grid) {
  require(!eps_grid.empty(), "epsilon grid must be nonempty");
  double previous = 0.0;
  EtildeEstimate out;
  for (double e : eps_grid) {
    require(std::isfinite(e) && e > previous, "epsilon grid must be positive and strictly increasing");
    out.precision = std::max(out.precision, e - previous);
    previous = e;
  }
  auto [sx, sy] = oriented_segments(system, x, y, schedule.max());
  for (double eps : eps_grid) {
    double sup = 0.0;
    for (std::size_t k = schedule.tail_start(); k < schedule.size(); ++k) {
      const auto n = static_cast<std::size_t>(schedule.checkpoints()[k]);
      sup = std::max(sup, static_cast<double>(delta_count(sx, sy, n, eps)) / static_cast<double>(n));
    }
    out.tail_fraction.push_back(sup);
    if (sup < eps) {
      out.value = eps;
      out.qualified = true;
      return out;
    }
  }
  out.value = eps_grid.back();
  out.qualified = false;
  return out;
}

SandwichReport sandwich_check(const SystemSpec& system, const Point& x, const Point& y,
                              std::int64_t n, double delta) {
  require_length(n);
  require(std::isfinite(delta) && delta >= 0.0, "delta must be a finite nonnegative number");
  auto [sx, sy] = oriented_segments(system, x, y, n);
  const auto m = static_cast<std::size_t>(n);
  SandwichReport r;
  r.delta_count = delta_count(sx, sy, m, delta);
  const double nd = static_cast<double>(n);
  if (n <= kAssignmentLimit) {
    r.mid = min_cost_assignment(cost_matrix(sx, sy)).total_cost;
  } else {
    resolve_path(system, EbarPath::Transport1D, n);
    r.mid = nd * fast_w1(sx, sy, m);
  }
  const double cnt = static_cast<double>(r.delta_count);
  r.lhs = delta * cnt;
  r.rhs = cnt * system.diameter() + delta * (nd - cnt);
  const double tol = 8.0 * nd * DBL_EPSILON * std::max(1.0, system.diameter());
  r.holds = r.lhs <= r.mid + tol && r.mid <= r.rhs + tol;
  return r;
}

}  // namespace orbitmetric
