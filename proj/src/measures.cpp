#include "orbitmetric/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "orbitmetric/flow.hpp"

namespace orbitmetric {

namespace {

using AtomKey = std::vector<std::uint64_t>;

void append_key(const SystemSpec& system, const Point& p, AtomKey& key) {
  switch (system.geometry()) {
    case Geometry::Circle:
    case Geometry::Line: key.push_back(std::bit_cast<std::uint64_t>(p.coordinate() + 0.0)); return;
    case Geometry::Symbolic: key.push_back(p.symbols().window(system.shift_horizon())); return;
    case Geometry::Product:
      append_key(system.first(), p.first(), key);
      append_key(system.second(), p.second(), key);
      return;
  }
}

void append_state_key(const OrbitSegment& seg, std::size_t k, AtomKey& key) {
  switch (seg.system().geometry()) {
    case Geometry::Circle:
    case Geometry::Line: key.push_back(std::bit_cast<std::uint64_t>(seg.coordinates()[k] + 0.0)); return;
    case Geometry::Symbolic: key.push_back(seg.windows()[k]); return;
    case Geometry::Product:
      append_state_key(seg.first(), k, key);
      append_state_key(seg.second(), k, key);
      return;
  }
}

void check_space(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system) {
  require(mu.system() == system && nu.system() == system,
          "measures do not live on the requested system");
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscreteMeasure

DiscreteMeasure::DiscreteMeasure(SystemSpec system, std::vector<Point> atoms,
                                 std::vector<double> weights)
    : system_(std::move(system)) {
  require(atoms.size() == weights.size(), "atoms and weights differ in length");
  require(!atoms.empty(), "a probability measure needs at least one atom");
  long double total = 0.0L;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, "weights must be finite and nonnegative");
    total += w;
  }
  require(std::fabs(static_cast<double>(total - 1.0L)) <= 1e-12, "weights must sum to 1");

  std::map<AtomKey, std::size_t> index;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    validate_point(system_, atoms[k]);
    if (weights[k] == 0.0) continue;
    AtomKey key;
    append_key(system_, atoms[k], key);
    auto [it, inserted] = index.emplace(std::move(key), atoms_.size());
    if (inserted) {
      atoms_.push_back(std::move(atoms[k]));
      weights_.push_back(weights[k]);
    } else {
      weights_[it->second] += weights[k];
    }
  }
}

DiscreteMeasure DiscreteMeasure::dirac(SystemSpec system, Point atom) {
  return DiscreteMeasure(std::move(system), {std::move(atom)}, {1.0});
}

DiscreteMeasure DiscreteMeasure::uniform(SystemSpec system, std::vector<Point> atoms) {
  require(!atoms.empty(), "a probability measure needs at least one atom");
  std::vector<double> w(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  return normalized(std::move(system), std::move(atoms), std::move(w));
}

DiscreteMeasure DiscreteMeasure::normalized(SystemSpec system, std::vector<Point> atoms,
                                            std::vector<double> weights) {
  long double total = 0.0L;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, "weights must be finite and nonnegative");
    total += w;
  }
  require(total > 0.0L, "weights sum to zero");
  for (double& w : weights) w = static_cast<double>(w / total);
  return DiscreteMeasure(std::move(system), std::move(atoms), std::move(weights));
}

std::vector<double> DiscreteMeasure::coordinates() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    require(a.is_scalar(), "measure atoms are not scalar coordinates");
    out.push_back(a.coordinate());
  }
  return out;
}

MeasureSet::MeasureSet(std::vector<DiscreteMeasure> members) : members_(std::move(members)) {
  require(!members_.empty(), "measure set must be nonempty");
}

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(std::vector<std::int64_t> checkpoints, std::size_t tail_start)
    : checkpoints_(std::move(checkpoints)), tail_start_(tail_start) {
  require(!checkpoints_.empty(), "schedule needs at least one checkpoint");
  require(checkpoints_.front() >= 1, "checkpoints must be positive");
  for (std::size_t k = 1; k < checkpoints_.size(); ++k) {
    require(checkpoints_[k] > checkpoints_[k - 1], "checkpoints must be strictly increasing");
  }
  require(tail_start_ < checkpoints_.size(), "tail_start must index an existing checkpoint");
}

Schedule Schedule::geometric(std::int64_t cap, double ratio, std::size_t tail_count) {
  require(cap >= 1, "schedule cap must be positive");
  require(ratio > 1.0, "schedule ratio must exceed 1");
  require(tail_count >= 1, "tail must contain at least one checkpoint");
  std::vector<std::int64_t> points;
  for (double v = 1.0;; v *= ratio) {
    const auto n = static_cast<std::int64_t>(std::llround(v));
    if (n > cap) break;
    if (points.empty() || n > points.back()) points.push_back(n);
  }
  const std::size_t tail = points.size() > tail_count ? points.size() - tail_count : 0;
  return Schedule(std::move(points), tail);
}

// ---------------------------------------------------------------------------
// Empirical measures

DiscreteMeasure empirical_measure(const OrbitSegment& seg) { return empirical_measure(seg, seg.size()); }

DiscreteMeasure empirical_measure(const OrbitSegment& seg, std::size_t n) {
  require(n >= 1 && n <= seg.size(), "empirical measure length out of range");
  std::map<AtomKey, std::size_t> index;
  std::vector<std::size_t> first_state;
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < n; ++k) {
    AtomKey key;
    append_state_key(seg, k, key);
    auto [it, inserted] = index.emplace(std::move(key), counts.size());
    if (inserted) {
      first_state.push_back(k);
      counts.push_back(1);
    } else {
      ++counts[it->second];
    }
  }
  std::vector<Point> atoms;
  std::vector<double> weights;
  atoms.reserve(counts.size());
  weights.reserve(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    atoms.push_back(seg.state(first_state[a]));
    weights.push_back(static_cast<double>(counts[a]) / static_cast<double>(n));
  }
  return DiscreteMeasure(seg.system(), std::move(atoms), std::move(weights));
}

// ---------------------------------------------------------------------------
// Wasserstein-1

double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system) {
  check_space(mu, nu, system);
  const auto d = distance_matrix(system, mu.atoms(), nu.atoms());
  return transport_cost(mu.weights(), nu.weights(), d);
}

double wasserstein1_1d(std::span<const double> x, std::span<const double> wx,
                       std::span<const double> y, std::span<const double> wy, Geometry1D geometry) {
  require(x.size() == wx.size() && y.size() == wy.size(), "coordinates and weights differ in length");
  require(!x.empty() && !y.empty(), "empty measure");
  struct Event {
    double at;
    double mass;
  };
  std::vector<Event> events;
  events.reserve(x.size() + y.size());
  for (std::size_t i = 0; i < x.size(); ++i) events.push_back({x[i], wx[i]});
  for (std::size_t j = 0; j < y.size(); ++j) events.push_back({y[j], -wy[j]});
  for (const auto& e : events) {
    require(std::isfinite(e.at), "non-finite coordinate");
    if (geometry == Geometry1D::Circle) require(e.at >= 0.0 && e.at < 1.0, "circle coordinate outside [0,1)");
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.at < b.at; });

  // Piecewise-constant F_mu - F_nu on [events[k].at, events[k+1].at).
  std::vector<double> level, length;
  double cdf = 0.0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    cdf += events[k].mass;
    if (k + 1 < events.size()) {
      const double len = events[k + 1].at - events[k].at;
      if (len > 0.0) {
        level.push_back(cdf);
        length.push_back(len);
      }
    }
  }

  if (geometry == Geometry1D::Line) {
    double total = 0.0;
    for (std::size_t k = 0; k < level.size(); ++k) total += std::fabs(level[k]) * length[k];
    return total;
  }

  // The wrap-around arc [last, 1) + [0, first) carries F_mu - F_nu = 0.
  const double wrap = 1.0 - (events.back().at - events.front().at);
  if (wrap > 0.0) {
    level.push_back(0.0);
    length.push_back(wrap);
  }
  std::vector<std::size_t> order(level.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return level[a] < level[b]; });
  const double half = 0.5 * std::accumulate(length.begin(), length.end(), 0.0);
  double acc = 0.0;
  double shift = 0.0;
  for (std::size_t k : order) {
    acc += length[k];
    if (acc >= half) {
      shift = level[k];
      break;
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < level.size(); ++k) total += std::fabs(level[k] - shift) * length[k];
  return total;
}

double wasserstein1_fast_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Geometry1D geometry) {
  const auto x = mu.coordinates();
  const auto y = nu.coordinates();
  return wasserstein1_1d(x, mu.weights(), y, nu.weights(), geometry);
}

// ---------------------------------------------------------------------------
// Prokhorov

namespace {

// Sorted distinct breakpoints, always starting at 0. On the interval
// (t_k, t_{k+1}] the open eps-hull uses exactly the pairs with d <= t_k.
std::vector<double> breakpoints(std::span<const double> distance) {
  std::vector<double> t(distance.begin(), distance.end());
  t.push_back(0.0);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

double upper_end(const std::vector<double>& t, std::size_t k) {
  return k + 1 < t.size() ? t[k + 1] : std::numeric_limits<double>::infinity();
}

void check_prokhorov_input(std::span<const double> mu, std::span<const double> nu,
                           std::span<const double> distance) {
  require(!mu.empty() && !nu.empty(), "empty measure");
  require(distance.size() == mu.size() * nu.size(), "distance matrix has the wrong size");
}

}  // namespace

double prokhorov_from_distances(std::span<const double> mu, std::span<const double> nu,
                                std::span<const double> distance) {
  check_prokhorov_input(mu, nu, distance);
  const auto t = breakpoints(distance);
  // Deficiency 1 - F_k is nonincreasing in k while t_{k+1} increases, so the
  // first interval where the deficiency fits is found by bisection.
  auto deficiency = [&](std::size_t k) {
    return std::max(0.0, 1.0 - threshold_max_flow(mu, nu, distance, t[k]));
  };
  std::size_t lo = 0;
  std::size_t hi = t.size() - 1;  // last interval is always feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (deficiency(mid) <= upper_end(t, mid)) hi = mid;
    else lo = mid + 1;
  }
  return std::min(1.0, std::max(t[lo], deficiency(lo)));
}

double prokhorov_oracle_from_distances(std::span<const double> mu, std::span<const double> nu,
                                       std::span<const double> distance) {
  check_prokhorov_input(mu, nu, distance);
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  if (m > kProkhorovOracleLimit) {
    fail(ErrorKind::SizeLimit, "Prokhorov subset oracle is limited to 12 atoms, got " + std::to_string(m));
  }
  const auto t = breakpoints(distance);
  double best = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    double worst = 0.0;  // sup over B of mu(B) - nu(B^eps), B = {} gives 0
    for (std::uint32_t subset = 1; subset < (1u << m); ++subset) {
      double mass = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        if (subset & (1u << i)) mass += mu[i];
      double covered = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        bool near = false;
        for (std::size_t i = 0; i < m && !near; ++i)
          near = (subset & (1u << i)) && distance[i * n + j] <= t[k];
        if (near) covered += nu[j];
      }
      worst = std::max(worst, mass - covered);
    }
    if (worst <= upper_end(t, k)) best = std::min(best, std::max(t[k], worst));
  }
  return best;
}

double prokhorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system) {
  check_space(mu, nu, system);
  const auto d = distance_matrix(system, mu.atoms(), nu.atoms());
  return prokhorov_from_distances(mu.weights(), nu.weights(), d);
}

double prokhorov_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system) {
  check_space(mu, nu, system);
  if (mu.size() > kProkhorovOracleLimit) {
    fail(ErrorKind::SizeLimit,
         "Prokhorov subset oracle is limited to 12 atoms, got " + std::to_string(mu.size()));
  }
  const auto d = distance_matrix(system, mu.atoms(), nu.atoms());
  return prokhorov_oracle_from_distances(mu.weights(), nu.weights(), d);
}

double hausdorff_measures(const MeasureSet& a, const MeasureSet& b, const SystemSpec& system) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  std::vector<double> rho(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) rho[i * n + j] = prokhorov(a.members()[i], b.members()[j], system);
  double forward = 0.0, backward = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) nearest = std::min(nearest, rho[i * n + j]);
    forward = std::max(forward, nearest);
  }
  for (std::size_t j = 0; j < n; ++j) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) nearest = std::min(nearest, rho[i * n + j]);
    backward = std::max(backward, nearest);
  }
  return std::max(forward, backward);
}

// ---------------------------------------------------------------------------
// Distribution-measure estimate

OmegaEstimate omega_hat_estimate(const SystemSpec& system, const Point& x, const Schedule& schedule,
                                 double cluster_tol) {
  require(std::isfinite(cluster_tol) && cluster_tol > 0.0, "cluster_tol must be positive");
  const OrbitSegment seg = orbit_segment(system, x, schedule.max());
  std::vector<DiscreteMeasure> reps;
  std::vector<std::int64_t> trace;
  std::vector<std::size_t> cluster_of;
  std::vector<double> distance_to;
  for (std::size_t k = schedule.tail_start(); k < schedule.size(); ++k) {
    const auto n = schedule.checkpoints()[k];
    DiscreteMeasure m = empirical_measure(seg, static_cast<std::size_t>(n));
    std::size_t assigned = reps.size();
    double d_assigned = 0.0;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const double d = prokhorov(m, reps[r], system);
      if (d <= cluster_tol) {
        assigned = r;
        d_assigned = d;
        break;
      }
    }
    if (assigned == reps.size()) reps.push_back(std::move(m));
    trace.push_back(n);
    cluster_of.push_back(assigned);
    distance_to.push_back(d_assigned);
  }
  return {MeasureSet(std::move(reps)), std::move(trace), std::move(cluster_of), std::move(distance_to)};
}

}  // namespace orbitmetric
