#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "orbitmetric/measures.hpp"
#include "orbitmetric/systems.hpp"

namespace orbitmetric {

/// Values of a quantity along a schedule; tail_sup (the maximum over the tail
/// checkpoints) is the finite-scale stand-in for a limsup.
struct TailEstimate {
  Schedule schedule;
  std::vector<double> values;
  double tail_sup = 0.0;
  double tail_last = 0.0;
};

TailEstimate make_tail_estimate(Schedule schedule, std::vector<double> values);

struct WeylProfile {
  std::int64_t horizon = 0;
  std::vector<std::int64_t> window_lengths;
  std::map<std::int64_t, double> sup_window_avg;
};

enum class EbarPath {
  Auto,         // 1-D transport on circle/interval systems, assignment elsewhere
  Assignment,   // exact min-cost assignment, n <= kAssignmentLimit
  Transport1D,  // sorted-CDF W1, circle/interval systems only
};

inline constexpr std::int64_t kAssignmentLimit = 2000;

/// Total order on points used to evaluate pair quantities in a canonical
/// orientation, so that f(x, y) and f(y, x) run the same floating-point path.
bool point_less(const Point& a, const Point& b);

/// (1/n) min over permutations of sum_k d(T^k x, T^sigma(k) y).
double ebar_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n,
              EbarPath path = EbarPath::Auto);

TailEstimate ebar_estimate(const SystemSpec& system, const Point& x, const Point& y,
                           const Schedule& schedule, EbarPath path = EbarPath::Auto);

/// Time-aligned average (1/n) sum_k d(T^k x, T^k y).
double besicovitch_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n);

TailEstimate besicovitch_estimate(const SystemSpec& system, const Point& x, const Point& y,
                                  const Schedule& schedule);

/// For each window length l: max over starts m <= horizon - l of the average
/// of d(T^k x, T^k y) over k = m .. m + l - 1.
WeylProfile weyl_profile(const SystemSpec& system, const Point& x, const Point& y,
                         std::int64_t horizon, const std::vector<std::int64_t>& window_lengths);

/// min over permutations of #{j : d(T^j x, T^sigma(j) y) > delta}, computed
/// as n minus a maximum matching on the pairs within delta.
std::int64_t delta_n(const SystemSpec& system, const Point& x, const Point& y, std::int64_t n,
                     double delta);

struct EtildeEstimate {
  double value = 0.0;
  bool qualified = false;     // false: no grid point qualified, value is the grid top
  double precision = 0.0;     // largest grid step
  std::vector<double> tail_fraction;  // tail sup of delta_n / n for each grid point tried
};

EtildeEstimate etilde_estimate(const SystemSpec& system, const Point& x, const Point& y,
                               const Schedule& schedule, const std::vector<double>& eps_grid);

struct SandwichReport {
  std::int64_t delta_count = 0;
  double lhs = 0.0;  // delta * Delta_n
  double mid = 0.0;  // n * Ebar_n
  double rhs = 0.0;  // Delta_n * diameter + delta * (n - Delta_n)
  bool holds = false;
};

SandwichReport sandwich_check(const SystemSpec& system, const Point& x, const Point& y,
                              std::int64_t n, double delta);

}  // namespace orbitmetric
