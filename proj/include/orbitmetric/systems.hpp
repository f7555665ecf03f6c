#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "orbitmetric/cost_matrix.hpp"
#include "orbitmetric/errors.hpp"

namespace orbitmetric {

enum class SystemKind { CircleRotation, DoublingMap, TentMap, LogisticMap, BinaryShift, Product };

/// Ground geometry of a system's state space.
enum class Geometry { Circle, Line, Symbolic, Product };

inline constexpr int kDefaultShiftHorizon = 30;
inline constexpr int kMaxShiftHorizon = 64;

/// A concrete topological dynamical system (X, d, T). Immutable value type;
/// product factors are shared.
class SystemSpec {
 public:
  /// Rotation by 0 (the identity on the circle).
  SystemSpec() = default;

  static SystemSpec circle_rotation(double alpha);
  static SystemSpec doubling_map();
  static SystemSpec tent_map();
  static SystemSpec logistic_map(double r);
  static SystemSpec binary_shift(int shift_horizon = kDefaultShiftHorizon);
  static SystemSpec product(SystemSpec a, SystemSpec b);

  /// Copy with a different symbol lookahead. Only meaningful for shifts but
  /// carried (and serialized) by every kind.
  SystemSpec with_shift_horizon(int shift_horizon) const;

  SystemKind kind() const noexcept { return kind_; }
  Geometry geometry() const noexcept;
  double alpha() const noexcept { return alpha_; }
  double r() const noexcept { return r_; }
  int shift_horizon() const noexcept { return shift_horizon_; }
  const SystemSpec& first() const;
  const SystemSpec& second() const;

  /// 1/2 on the circle (arc metric), 1 on the interval and the shift, max of
  /// the factors for products.
  double diameter() const noexcept;
  bool is_scalar() const noexcept {
    return geometry() == Geometry::Circle || geometry() == Geometry::Line;
  }
  std::string kind_name() const;

  friend bool operator==(const SystemSpec& a, const SystemSpec& b);

 private:
  SystemSpec(SystemKind kind, double alpha, double r, int shift_horizon);

  SystemKind kind_ = SystemKind::CircleRotation;
  double alpha_ = 0.0;
  double r_ = 0.0;
  int shift_horizon_ = kDefaultShiftHorizon;
  std::shared_ptr<const std::array<SystemSpec, 2>> factors_;
};

SystemSpec product_system(SystemSpec a, SystemSpec b);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class TailRule { Finite, Zeros, Ones, Periodic };

/// One-sided binary sequence: a stored prefix followed by an eventual-suffix
/// rule. Shifting is O(1): the prefix buffer is shared and only the read
/// offset (or the phase inside the periodic tail) moves.
class SymbolSequence {
 public:
  SymbolSequence();
  SymbolSequence(std::vector<std::uint8_t> prefix, TailRule rule,
                 std::vector<std::uint8_t> period = {});

  static SymbolSequence constant(std::uint8_t symbol);

  /// Text form: prefix symbols optionally followed by a parenthesised
  /// periodic tail, e.g. "0000000000(1)" or "(01)"; a bare word is finite.
  static SymbolSequence parse(std::string_view text);
  std::string to_string() const;

  /// Symbol at index k; throws insufficient-tail past the end of a finite word.
  std::uint8_t symbol(std::size_t k) const;
  /// Number of symbols the sequence can supply (SIZE_MAX when infinite).
  std::size_t available() const noexcept;
  SymbolSequence shifted(std::size_t k) const;
  /// First `horizon` symbols packed MSB-first (symbol i at bit 63 - i).
  std::uint64_t window(int horizon) const;

  TailRule tail_rule() const noexcept { return rule_; }
  std::vector<std::uint8_t> remaining_prefix() const;
  std::vector<std::uint8_t> period_from_phase() const;

  friend bool operator==(const SymbolSequence& a, const SymbolSequence& b);

 private:
  std::size_t prefix_size() const noexcept { return prefix_->size() - offset_; }

  std::shared_ptr<const std::vector<std::uint8_t>> prefix_;
  std::size_t offset_ = 0;
  TailRule rule_ = TailRule::Zeros;
  std::shared_ptr<const std::vector<std::uint8_t>> period_;
  std::size_t phase_ = 0;
};

struct CircleCoord {
  double value = 0.0;
  std::optional<Rational> exact;
};

struct IntervalCoord {
  double value = 0.0;
  std::optional<Rational> exact;
};

struct PointPair;

/// A state of some system: circle coordinate, interval coordinate, binary
/// sequence, or a pair of states for products.
class Point {
 public:
  Point() = default;

  static Point circle(double x);
  static Point circle(Rational q);
  static Point interval(double x);
  static Point interval(Rational q);
  static Point shift(SymbolSequence s);
  static Point pair(Point a, Point b);

  bool is_circle() const noexcept { return std::holds_alternative<CircleCoord>(value_); }
  bool is_interval() const noexcept { return std::holds_alternative<IntervalCoord>(value_); }
  bool is_shift() const noexcept { return std::holds_alternative<SymbolSequence>(value_); }
  bool is_pair() const noexcept {
    return std::holds_alternative<std::shared_ptr<const PointPair>>(value_);
  }
  bool is_scalar() const noexcept { return is_circle() || is_interval(); }

  double coordinate() const;
  std::optional<Rational> exact() const;
  const SymbolSequence& symbols() const;
  const Point& first() const;
  const Point& second() const;

  friend bool operator==(const Point& a, const Point& b);

 private:
  std::variant<CircleCoord, IntervalCoord, SymbolSequence, std::shared_ptr<const PointPair>>
      value_;
};

struct PointPair {
  Point first;
  Point second;
};

/// Throws invalid-argument when `p` is not a state of `system`.
void validate_point(const SystemSpec& system, const Point& p);

double dist(const SystemSpec& system, const Point& p, const Point& q);

/// One application of T.
Point apply_map(const SystemSpec& system, const Point& p);

/// First n states of an orbit. Scalar systems keep their coordinates; shifts
/// keep n + shift_horizon symbols and the packed window of every state;
/// products keep one segment per factor.
class OrbitSegment {
 public:
  const SystemSpec& system() const noexcept { return system_; }
  const Point& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return n_; }

  Point state(std::size_t k) const;

  std::span<const double> coordinates() const noexcept { return coords_; }
  std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }
  std::span<const std::uint64_t> windows() const noexcept { return windows_; }
  const OrbitSegment& first() const;
  const OrbitSegment& second() const;

  /// Prefix of length m (m <= size()).
  OrbitSegment prefix(std::size_t m) const;

 private:
  friend OrbitSegment orbit_segment(const SystemSpec&, const Point&, std::int64_t);

  SystemSpec system_;
  Point base_;
  std::size_t n_ = 0;
  std::vector<double> coords_;
  std::vector<std::optional<Rational>> exact_;
  std::vector<std::uint8_t> symbols_;
  std::vector<std::uint64_t> windows_;
  std::shared_ptr<const std::array<OrbitSegment, 2>> factors_;
};

OrbitSegment orbit_segment(const SystemSpec& system, const Point& x, std::int64_t n);

/// d(segX[i], segY[j]) without materializing Points.
double segment_distance(const OrbitSegment& a, std::size_t i, const OrbitSegment& b,
                        std::size_t j);

CostMatrix cost_matrix(const OrbitSegment& seg_x, const OrbitSegment& seg_y);

/// Row-major |a| x |b| matrix of ground distances between two point lists.
std::vector<double> distance_matrix(const SystemSpec& system, std::span<const Point> a,
                                    std::span<const Point> b);

/// Precision of every ground distance: 2^-K for shifts, 0 for exact
/// geometries, max of the factors for products.
double precision_bound(const SystemSpec& system) noexcept;

enum class Example31Variant { U, V };

/// U_1 U_2 ... U_{n_blocks} (or V_1 ...), where U_n is a run of a_n zeros
/// for odd n and ones for even n, and V_n is the complement. The sequence
/// continues with the symbol of its last block forever.
Point build_example31_point(Example31Variant variant, std::span<const std::int64_t> block_rule,
                            int n_blocks);

}  // namespace orbitmetric
