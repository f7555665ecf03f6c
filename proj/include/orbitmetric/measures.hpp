#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orbitmetric/systems.hpp"

namespace orbitmetric {

/// Finitely supported probability measure on a system's state space. Atoms at
/// distance 0 from each other are merged on construction (for shifts: atoms
/// whose first shift_horizon symbols agree).
class DiscreteMeasure {
 public:
  /// Weights must be nonnegative and sum to 1 within 1e-12.
  DiscreteMeasure(SystemSpec system, std::vector<Point> atoms, std::vector<double> weights);

  static DiscreteMeasure dirac(SystemSpec system, Point atom);
  static DiscreteMeasure uniform(SystemSpec system, std::vector<Point> atoms);
  /// Divides nonnegative weights by their total before construction.
  static DiscreteMeasure normalized(SystemSpec system, std::vector<Point> atoms,
                                    std::vector<double> weights);

  const SystemSpec& system() const noexcept { return system_; }
  std::span<const Point> atoms() const noexcept { return atoms_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Scalar coordinates of the atoms (circle and interval systems only).
  std::vector<double> coordinates() const;

 private:
  SystemSpec system_;
  std::vector<Point> atoms_;
  std::vector<double> weights_;
};

/// Nonempty finite collection of measures (a finite-scale stand-in for a
/// closed subset of the measure space).
class MeasureSet {
 public:
  explicit MeasureSet(std::vector<DiscreteMeasure> members);

  std::span<const DiscreteMeasure> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<DiscreteMeasure> members_;
};

/// Increasing checkpoints n_1 < ... < n_K; statistics over indices
/// >= tail_start stand in for a limsup.
class Schedule {
 public:
  Schedule(std::vector<std::int64_t> checkpoints, std::size_t tail_start);

  /// round(ratio^k) for k = 0, 1, ..., deduplicated, up to `cap`, with the
  /// last `tail_count` checkpoints forming the tail.
  static Schedule geometric(std::int64_t cap, double ratio = 1.5, std::size_t tail_count = 5);

  std::span<const std::int64_t> checkpoints() const noexcept { return checkpoints_; }
  std::size_t tail_start() const noexcept { return tail_start_; }
  std::size_t size() const noexcept { return checkpoints_.size(); }
  std::int64_t max() const noexcept { return checkpoints_.back(); }

 private:
  std::vector<std::int64_t> checkpoints_;
  std::size_t tail_start_ = 0;
};

/// m_T(x, n): uniform weight 1/n on the first n states (n = seg.size() by default).
DiscreteMeasure empirical_measure(const OrbitSegment& seg);
DiscreteMeasure empirical_measure(const OrbitSegment& seg, std::size_t n);

/// Exact W1 with the system's ground metric, via the transportation problem
/// on the two supports.
double wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system);

enum class Geometry1D { Line, Circle };

/// Exact W1 for scalar atoms in O(k log k). Line: L1 distance of the CDFs.
/// Circle (unit circumference): min over t of the integral of |F_mu - F_nu - t|,
/// attained at a length-weighted median of F_mu - F_nu.
double wasserstein1_fast_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Geometry1D geometry);

/// Same on raw coordinates/weights; duplicate coordinates are allowed.
double wasserstein1_1d(std::span<const double> x, std::span<const double> wx,
                       std::span<const double> y, std::span<const double> wy, Geometry1D geometry);

/// Prokhorov distance inf{eps > 0 : mu(B) <= nu(B^eps) + eps for all B}, with
/// B^eps the open eps-hull, computed from max-flow deficiencies.
double prokhorov(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const SystemSpec& system);

inline constexpr std::size_t kProkhorovOracleLimit = 12;

/// Same quantity by literal enumeration of subsets of supp(mu) (<= 12 atoms).
double prokhorov_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const SystemSpec& system);

/// Both Prokhorov routes on raw data: weights of mu (m), of nu (n), and the
/// row-major m x n ground distances.
double prokhorov_from_distances(std::span<const double> mu, std::span<const double> nu,
                                std::span<const double> distance);
double prokhorov_oracle_from_distances(std::span<const double> mu, std::span<const double> nu,
                                       std::span<const double> distance);

/// Hausdorff distance between measure sets induced by the Prokhorov metric.
double hausdorff_measures(const MeasureSet& a, const MeasureSet& b, const SystemSpec& system);

inline constexpr double kDefaultClusterTol = 0.05;

/// Finite-scale estimate of the set of limit points of (m_T(x, n)).
struct OmegaEstimate {
  MeasureSet representatives;
  std::vector<std::int64_t> trace_n;        // tail checkpoints, in order
  std::vector<std::size_t> cluster_of;      // representative index per checkpoint
  std::vector<double> distance_to_cluster;  // rho to that representative
};

OmegaEstimate omega_hat_estimate(const SystemSpec& system, const Point& x, const Schedule& schedule,
                                 double cluster_tol = kDefaultClusterTol);

}  // namespace orbitmetric
