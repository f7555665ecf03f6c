#include "orbitmetric/systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace orbitmetric {

// ---------------------------------------------------------------------------
// CostMatrix

CostMatrix::CostMatrix(std::size_t n, std::vector<double> entries, double precision_bound)
    : n_(n), entries_(std::move(entries)), precision_bound_(precision_bound) {
  require(entries_.size() == n_ * n_, "cost matrix storage does not match its size");
}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    require(row.size() == n, "cost matrix is not square");
    for (double v : row) require(std::isfinite(v) && v >= 0.0, "cost matrix entries must be finite and nonnegative");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CostMatrix(n, std::move(flat));
}

CostMatrix CostMatrix::leading(std::size_t m) const {
  require(m <= n_, "leading block larger than the matrix");
  std::vector<double> out(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>(i * n_), m,
                out.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  return CostMatrix(m, std::move(out), precision_bound_);
}

CostMatrix CostMatrix::scaled(double factor) const {
  std::vector<double> out(entries_);
  for (double& v : out) v *= factor;
  return CostMatrix(n_, std::move(out), precision_bound_ * factor);
}

// ---------------------------------------------------------------------------
// SystemSpec

SystemSpec::SystemSpec(SystemKind kind, double alpha, double r, int shift_horizon)
    : kind_(kind), alpha_(alpha), r_(r), shift_horizon_(shift_horizon) {
  require(shift_horizon >= 1 && shift_horizon <= kMaxShiftHorizon,
          "shift_horizon must lie in [1, 64]");
}

SystemSpec SystemSpec::circle_rotation(double alpha) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha < 1.0, "rotation alpha must lie in [0,1)");
  return SystemSpec(SystemKind::CircleRotation, alpha, 0.0, kDefaultShiftHorizon);
}

SystemSpec SystemSpec::doubling_map() {
  return SystemSpec(SystemKind::DoublingMap, 0.0, 0.0, kDefaultShiftHorizon);
}

SystemSpec SystemSpec::tent_map() {
  return SystemSpec(SystemKind::TentMap, 0.0, 0.0, kDefaultShiftHorizon);
}

SystemSpec SystemSpec::logistic_map(double r) {
  require(std::isfinite(r) && r >= 0.0 && r <= 4.0, "logistic parameter r must lie in [0,4]");
  return SystemSpec(SystemKind::LogisticMap, 0.0, r, kDefaultShiftHorizon);
}

SystemSpec SystemSpec::binary_shift(int shift_horizon) {
  return SystemSpec(SystemKind::BinaryShift, 0.0, 0.0, shift_horizon);
}

SystemSpec SystemSpec::product(SystemSpec a, SystemSpec b) {
  SystemSpec s(SystemKind::Product, 0.0, 0.0, kDefaultShiftHorizon);
  s.factors_ = std::make_shared<const std::array<SystemSpec, 2>>(
      std::array<SystemSpec, 2>{std::move(a), std::move(b)});
  return s;
}

SystemSpec product_system(SystemSpec a, SystemSpec b) {
  return SystemSpec::product(std::move(a), std::move(b));
}

SystemSpec SystemSpec::with_shift_horizon(int shift_horizon) const {
  require(shift_horizon >= 1 && shift_horizon <= kMaxShiftHorizon,
          "shift_horizon must lie in [1, 64]");
  SystemSpec copy = *this;
  copy.shift_horizon_ = shift_horizon;
  return copy;
}

Geometry SystemSpec::geometry() const noexcept {
  switch (kind_) {
    case SystemKind::CircleRotation:
    case SystemKind::DoublingMap: return Geometry::Circle;
    case SystemKind::TentMap:
    case SystemKind::LogisticMap: return Geometry::Line;
    case SystemKind::BinaryShift: return Geometry::Symbolic;
    case SystemKind::Product: return Geometry::Product;
  }
  return Geometry::Circle;
}

const SystemSpec& SystemSpec::first() const {
  require(kind_ == SystemKind::Product, "first() on a non-product system");
  return (*factors_)[0];
}

const SystemSpec& SystemSpec::second() const {
  require(kind_ == SystemKind::Product, "second() on a non-product system");
  return (*factors_)[1];
}

double SystemSpec::diameter() const noexcept {
  switch (geometry()) {
    case Geometry::Circle: return 0.5;
    case Geometry::Line:
    case Geometry::Symbolic: return 1.0;
    case Geometry::Product: return std::max((*factors_)[0].diameter(), (*factors_)[1].diameter());
  }
  return 1.0;
}

std::string SystemSpec::kind_name() const {
  switch (kind_) {
    case SystemKind::CircleRotation: return "circle_rotation";
    case SystemKind::DoublingMap: return "doubling_map";
    case SystemKind::TentMap: return "tent_map";
    case SystemKind::LogisticMap: return "logistic_map";
    case SystemKind::BinaryShift: return "binary_shift";
    case SystemKind::Product: return "product";
  }
  return "unknown";
}

bool operator==(const SystemSpec& a, const SystemSpec& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case SystemKind::CircleRotation: return a.alpha_ == b.alpha_;
    case SystemKind::LogisticMap: return a.r_ == b.r_;
    case SystemKind::BinaryShift: return a.shift_horizon_ == b.shift_horizon_;
    case SystemKind::Product:
      return a.first() == b.first() && a.second() == b.second();
    default: return true;
  }
}

double precision_bound(const SystemSpec& system) noexcept {
  switch (system.geometry()) {
    case Geometry::Symbolic: return std::ldexp(1.0, -system.shift_horizon());
    case Geometry::Product:
      return std::max(precision_bound(system.first()), precision_bound(system.second()));
    default: return 0.0;
  }
}

// ---------------------------------------------------------------------------
// SymbolSequence

namespace {

void check_symbols(const std::vector<std::uint8_t>& word) {
  for (auto s : word) require(s <= 1, "binary symbols must be 0 or 1");
}

std::shared_ptr<const std::vector<std::uint8_t>> empty_word() {
  static const auto empty = std::make_shared<const std::vector<std::uint8_t>>();
  return empty;
}

}  // namespace

SymbolSequence::SymbolSequence() : prefix_(empty_word()), rule_(TailRule::Zeros) {}

SymbolSequence::SymbolSequence(std::vector<std::uint8_t> prefix, TailRule rule,
                               std::vector<std::uint8_t> period)
    : rule_(rule) {
  check_symbols(prefix);
  check_symbols(period);
  prefix_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(prefix));
  if (rule == TailRule::Periodic) {
    require(!period.empty(), "periodic tail needs a nonempty period");
    period_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(period));
  } else {
    require(period.empty(), "period given for a non-periodic tail rule");
  }
}

SymbolSequence SymbolSequence::constant(std::uint8_t symbol) {
  require(symbol <= 1, "binary symbols must be 0 or 1");
  return SymbolSequence({}, symbol == 0 ? TailRule::Zeros : TailRule::Ones);
}

SymbolSequence SymbolSequence::parse(std::string_view text) {
  std::vector<std::uint8_t> prefix;
  std::size_t i = 0;
  for (; i < text.size() && text[i] != '('; ++i) {
    const char c = text[i];
    if (c == ' ' || c == '_') continue;
    require(c == '0' || c == '1', "unexpected character in symbol sequence: " + std::string(text));
    prefix.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (i == text.size()) return SymbolSequence(std::move(prefix), TailRule::Finite);

  const auto close = text.find(')', i);
  require(close != std::string_view::npos && close + 1 == text.size(),
          "periodic tail must be a final parenthesised group: " + std::string(text));
  std::vector<std::uint8_t> period;
  for (char c : text.substr(i + 1, close - i - 1)) {
    require(c == '0' || c == '1', "unexpected character in periodic tail: " + std::string(text));
    period.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  require(!period.empty(), "empty periodic tail");
  if (std::all_of(period.begin(), period.end(), [](auto s) { return s == 0; })) {
    return SymbolSequence(std::move(prefix), TailRule::Zeros);
  }
  if (std::all_of(period.begin(), period.end(), [](auto s) { return s == 1; })) {
    return SymbolSequence(std::move(prefix), TailRule::Ones);
  }
  return SymbolSequence(std::move(prefix), TailRule::Periodic, std::move(period));
}

std::string SymbolSequence::to_string() const {
  std::string out;
  for (auto s : remaining_prefix()) out.push_back(static_cast<char>('0' + s));
  switch (rule_) {
    case TailRule::Finite: break;
    case TailRule::Zeros: out += "(0)"; break;
    case TailRule::Ones: out += "(1)"; break;
    case TailRule::Periodic:
      out.push_back('(');
      for (auto s : period_from_phase()) out.push_back(static_cast<char>('0' + s));
      out.push_back(')');
      break;
  }
  return out;
}

std::uint8_t SymbolSequence::symbol(std::size_t k) const {
  const std::size_t stored = prefix_size();
  if (k < stored) return (*prefix_)[offset_ + k];
  switch (rule_) {
    case TailRule::Finite:
      fail(ErrorKind::InsufficientTail, "finite symbol sequence has " + std::to_string(stored) +
                                            " symbols, index " + std::to_string(k) + " requested");
    case TailRule::Zeros: return 0;
    case TailRule::Ones: return 1;
    case TailRule::Periodic: return (*period_)[(phase_ + (k - stored)) % period_->size()];
  }
  return 0;
}

std::size_t SymbolSequence::available() const noexcept {
  return rule_ == TailRule::Finite ? prefix_size() : std::numeric_limits<std::size_t>::max();
}

SymbolSequence SymbolSequence::shifted(std::size_t k) const {
  SymbolSequence out = *this;
  const std::size_t stored = prefix_size();
  if (k <= stored) {
    out.offset_ += k;
    return out;
  }
  if (rule_ == TailRule::Finite) {
    fail(ErrorKind::InsufficientTail, "cannot shift a finite sequence past its end");
  }
  out.offset_ = prefix_->size();
  if (rule_ == TailRule::Periodic) out.phase_ = (phase_ + (k - stored)) % period_->size();
  return out;
}

std::uint64_t SymbolSequence::window(int horizon) const {
  std::uint64_t bits = 0;
  for (int i = 0; i < horizon; ++i) {
    if (symbol(static_cast<std::size_t>(i)) != 0) bits |= std::uint64_t{1} << (63 - i);
  }
  return bits;
}

std::vector<std::uint8_t> SymbolSequence::remaining_prefix() const {
  return {prefix_->begin() + static_cast<std::ptrdiff_t>(offset_), prefix_->end()};
}

std::vector<std::uint8_t> SymbolSequence::period_from_phase() const {
  if (rule_ != TailRule::Periodic) return {};
  std::vector<std::uint8_t> out(period_->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*period_)[(phase_ + i) % out.size()];
  return out;
}

bool operator==(const SymbolSequence& a, const SymbolSequence& b) {
  return a.rule_ == b.rule_ && a.remaining_prefix() == b.remaining_prefix() &&
         a.period_from_phase() == b.period_from_phase();
}

// ---------------------------------------------------------------------------
// Point

namespace {

Rational reduced(Rational q) {
  require(q.den > 0, "rational denominator must be positive");
  require(q.den < (std::int64_t{1} << 61), "rational denominator too large for exact iteration");
  std::int64_t a = q.num < 0 ? -q.num : q.num;
  std::int64_t b = q.den;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    q.num /= a;
    q.den /= a;
  }
  return q;
}

}  // namespace

Point Point::circle(double x) {
  Point p;
  p.value_ = CircleCoord{x, std::nullopt};
  return p;
}

Point Point::circle(Rational q) {
  q = reduced(q);
  Point p;
  p.value_ = CircleCoord{q.value(), q};
  return p;
}

Point Point::interval(double x) {
  Point p;
  p.value_ = IntervalCoord{x, std::nullopt};
  return p;
}

Point Point::interval(Rational q) {
  q = reduced(q);
  Point p;
  p.value_ = IntervalCoord{q.value(), q};
  return p;
}

Point Point::shift(SymbolSequence s) {
  Point p;
  p.value_ = std::move(s);
  return p;
}

Point Point::pair(Point a, Point b) {
  Point p;
  p.value_ = std::make_shared<const PointPair>(PointPair{std::move(a), std::move(b)});
  return p;
}

double Point::coordinate() const {
  if (const auto* c = std::get_if<CircleCoord>(&value_)) return c->value;
  if (const auto* c = std::get_if<IntervalCoord>(&value_)) return c->value;
  fail(ErrorKind::InvalidArgument, "point has no scalar coordinate");
}

std::optional<Rational> Point::exact() const {
  if (const auto* c = std::get_if<CircleCoord>(&value_)) return c->exact;
  if (const auto* c = std::get_if<IntervalCoord>(&value_)) return c->exact;
  return std::nullopt;
}

const SymbolSequence& Point::symbols() const {
  if (const auto* s = std::get_if<SymbolSequence>(&value_)) return *s;
  fail(ErrorKind::InvalidArgument, "point is not a symbol sequence");
}

const Point& Point::first() const {
  if (const auto* p = std::get_if<std::shared_ptr<const PointPair>>(&value_)) return (*p)->first;
  fail(ErrorKind::InvalidArgument, "point is not a pair");
}

const Point& Point::second() const {
  if (const auto* p = std::get_if<std::shared_ptr<const PointPair>>(&value_)) return (*p)->second;
  fail(ErrorKind::InvalidArgument, "point is not a pair");
}

bool operator==(const Point& a, const Point& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (a.is_scalar()) return a.coordinate() == b.coordinate();
  if (a.is_shift()) return a.symbols() == b.symbols();
  return a.first() == b.first() && a.second() == b.second();
}

void validate_point(const SystemSpec& system, const Point& p) {
  switch (system.geometry()) {
    case Geometry::Circle: {
      require(p.is_circle(), system.kind_name() + " expects a circle coordinate");
      const double x = p.coordinate();
      require(std::isfinite(x) && x >= 0.0 && x < 1.0, "circle coordinate must lie in [0,1)");
      return;
    }
    case Geometry::Line: {
      require(p.is_interval(), system.kind_name() + " expects an interval coordinate");
      const double x = p.coordinate();
      require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "interval coordinate must lie in [0,1]");
      return;
    }
    case Geometry::Symbolic:
      require(p.is_shift(), "binary_shift expects a symbol sequence");
      return;
    case Geometry::Product:
      require(p.is_pair(), "product system expects a pair of points");
      validate_point(system.first(), p.first());
      validate_point(system.second(), p.second());
      return;
  }
}

// ---------------------------------------------------------------------------
// Metric

namespace {

inline double arc_distance(double x, double y) noexcept {
  const double a = std::fabs(x - y);
  return std::min(a, 1.0 - a);
}

inline double window_distance(std::uint64_t a, std::uint64_t b, int horizon) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return 0.0;
  const int k = std::countl_zero(diff);
  return k < horizon ? std::ldexp(1.0, -k) : 0.0;
}

}  // namespace

double dist(const SystemSpec& system, const Point& p, const Point& q) {
  validate_point(system, p);
  validate_point(system, q);
  switch (system.geometry()) {
    case Geometry::Circle: return arc_distance(p.coordinate(), q.coordinate());
    case Geometry::Line: return std::fabs(p.coordinate() - q.coordinate());
    case Geometry::Symbolic: {
      const int k = system.shift_horizon();
      return window_distance(p.symbols().window(k), q.symbols().window(k), k);
    }
    case Geometry::Product:
      return std::max(dist(system.first(), p.first(), q.first()),
                      dist(system.second(), p.second(), q.second()));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Dynamics

namespace {

struct Scalar {
  double value;
  std::optional<Rational> exact;
};

Scalar step_scalar(const SystemSpec& system, Scalar s) {
  switch (system.kind()) {
    case SystemKind::CircleRotation: {
      double v = s.value + system.alpha();
      if (v >= 1.0) v -= 1.0;
      return {v, std::nullopt};
    }
    case SystemKind::DoublingMap: {
      if (s.exact) {
        Rational q = *s.exact;
        q.num = (2 * q.num) % q.den;
        return {q.value(), q};
      }
      double v = 2.0 * s.value;
      if (v >= 1.0) v -= 1.0;
      return {v, std::nullopt};
    }
    case SystemKind::TentMap: {
      if (s.exact) {
        Rational q = *s.exact;
        q.num = 2 * q.num <= q.den ? 2 * q.num : 2 * (q.den - q.num);
        return {q.value(), q};
      }
      return {s.value < 0.5 ? 2.0 * s.value : 2.0 * (1.0 - s.value), std::nullopt};
    }
    case SystemKind::LogisticMap:
      return {std::clamp(system.r() * s.value * (1.0 - s.value), 0.0, 1.0), std::nullopt};
    default: break;
  }
  fail(ErrorKind::InvalidArgument, "not a scalar system");
}

Point make_scalar_point(const SystemSpec& system, const Scalar& s) {
  if (system.geometry() == Geometry::Circle) {
    return s.exact ? Point::circle(*s.exact) : Point::circle(s.value);
  }
  return s.exact ? Point::interval(*s.exact) : Point::interval(s.value);
}

}  // namespace

Point apply_map(const SystemSpec& system, const Point& p) {
  validate_point(system, p);
  switch (system.geometry()) {
    case Geometry::Circle:
    case Geometry::Line:
      return make_scalar_point(system, step_scalar(system, {p.coordinate(), p.exact()}));
    case Geometry::Symbolic: return Point::shift(p.symbols().shifted(1));
    case Geometry::Product:
      return Point::pair(apply_map(system.first(), p.first()),
                         apply_map(system.second(), p.second()));
  }
  return p;
}

OrbitSegment orbit_segment(const SystemSpec& system, const Point& x, std::int64_t n) {
  require(n >= 1, "orbit segment length must be positive");
  validate_point(system, x);
  OrbitSegment seg;
  seg.system_ = system;
  seg.base_ = x;
  seg.n_ = static_cast<std::size_t>(n);

  switch (system.geometry()) {
    case Geometry::Circle:
    case Geometry::Line: {
      seg.coords_.resize(seg.n_);
      seg.exact_.resize(seg.n_);
      Scalar s{x.coordinate(), x.exact()};
      for (std::size_t k = 0; k < seg.n_; ++k) {
        seg.coords_[k] = s.value;
        seg.exact_[k] = s.exact;
        if (k + 1 < seg.n_) s = step_scalar(system, s);
      }
      break;
    }
    case Geometry::Symbolic: {
      const auto horizon = static_cast<std::size_t>(system.shift_horizon());
      const std::size_t needed = seg.n_ + horizon;
      const SymbolSequence& word = x.symbols();
      if (word.available() < needed) {
        fail(ErrorKind::InsufficientTail,
             "point supplies " + std::to_string(word.available()) + " symbols but " +
                 std::to_string(needed) + " are needed");
      }
      seg.symbols_.resize(needed);
      for (std::size_t i = 0; i < needed; ++i) seg.symbols_[i] = word.symbol(i);
      seg.windows_.resize(seg.n_);
      std::uint64_t w = 0;
      for (std::size_t i = 0; i < horizon; ++i) {
        if (seg.symbols_[i] != 0) w |= std::uint64_t{1} << (63 - i);
      }
      const std::uint64_t low_mask =
          horizon == 64 ? ~std::uint64_t{0} : ~((std::uint64_t{1} << (64 - horizon)) - 1);
      for (std::size_t k = 0; k < seg.n_; ++k) {
        seg.windows_[k] = w;
        w = (w << 1) & low_mask;
        if (seg.symbols_[k + horizon] != 0) w |= std::uint64_t{1} << (64 - horizon);
      }
      break;
    }
    case Geometry::Product:
      seg.factors_ = std::make_shared<const std::array<OrbitSegment, 2>>(
          std::array<OrbitSegment, 2>{orbit_segment(system.first(), x.first(), n),
                                      orbit_segment(system.second(), x.second(), n)});
      break;
  }
  return seg;
}

Point OrbitSegment::state(std::size_t k) const {
  require(k < n_, "state index out of range");
  switch (system_.geometry()) {
    case Geometry::Circle:
    case Geometry::Line: return make_scalar_point(system_, {coords_[k], exact_[k]});
    case Geometry::Symbolic: return Point::shift(base_.symbols().shifted(k));
    case Geometry::Product: return Point::pair((*factors_)[0].state(k), (*factors_)[1].state(k));
  }
  return base_;
}

const OrbitSegment& OrbitSegment::first() const {
  require(factors_ != nullptr, "first() on a non-product segment");
  return (*factors_)[0];
}

const OrbitSegment& OrbitSegment::second() const {
  require(factors_ != nullptr, "second() on a non-product segment");
  return (*factors_)[1];
}

OrbitSegment OrbitSegment::prefix(std::size_t m) const {
  require(m >= 1 && m <= n_, "prefix length out of range");
  OrbitSegment out;
  out.system_ = system_;
  out.base_ = base_;
  out.n_ = m;
  if (!coords_.empty()) {
    out.coords_.assign(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(m));
    out.exact_.assign(exact_.begin(), exact_.begin() + static_cast<std::ptrdiff_t>(m));
  }
  if (!windows_.empty()) {
    const auto horizon = static_cast<std::size_t>(system_.shift_horizon());
    out.symbols_.assign(symbols_.begin(),
                        symbols_.begin() + static_cast<std::ptrdiff_t>(m + horizon));
    out.windows_.assign(windows_.begin(), windows_.begin() + static_cast<std::ptrdiff_t>(m));
  }
  if (factors_) {
    out.factors_ = std::make_shared<const std::array<OrbitSegment, 2>>(
        std::array<OrbitSegment, 2>{(*factors_)[0].prefix(m), (*factors_)[1].prefix(m)});
  }
  return out;
}

double segment_distance(const OrbitSegment& a, std::size_t i, const OrbitSegment& b,
                        std::size_t j) {
  switch (a.system().geometry()) {
    case Geometry::Circle: return arc_distance(a.coordinates()[i], b.coordinates()[j]);
    case Geometry::Line: return std::fabs(a.coordinates()[i] - b.coordinates()[j]);
    case Geometry::Symbolic:
      return window_distance(a.windows()[i], b.windows()[j], a.system().shift_horizon());
    case Geometry::Product:
      return std::max(segment_distance(a.first(), i, b.first(), j),
                      segment_distance(a.second(), i, b.second(), j));
  }
  return 0.0;
}

namespace {

void fill_costs(const OrbitSegment& x, const OrbitSegment& y, std::vector<double>& out) {
  const std::size_t n = x.size();
  switch (x.system().geometry()) {
    case Geometry::Circle: {
      auto cx = x.coordinates();
      auto cy = y.coordinates();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = arc_distance(cx[i], cy[j]);
      return;
    }
    case Geometry::Line: {
      auto cx = x.coordinates();
      auto cy = y.coordinates();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = std::fabs(cx[i] - cy[j]);
      return;
    }
    case Geometry::Symbolic: {
      const int horizon = x.system().shift_horizon();
      auto wx = x.windows();
      auto wy = y.windows();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = window_distance(wx[i], wy[j], horizon);
      return;
    }
    case Geometry::Product: {
      fill_costs(x.first(), y.first(), out);
      std::vector<double> other(n * n);
      fill_costs(x.second(), y.second(), other);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], other[k]);
      return;
    }
  }
}

}  // namespace

CostMatrix cost_matrix(const OrbitSegment& seg_x, const OrbitSegment& seg_y) {
  require(seg_x.system() == seg_y.system(), "cost matrix of segments from different systems");
  require(seg_x.size() == seg_y.size(), "cost matrix of segments with different lengths");
  const std::size_t n = seg_x.size();
  std::vector<double> entries(n * n);
  fill_costs(seg_x, seg_y, entries);
  return CostMatrix(n, std::move(entries), precision_bound(seg_x.system()));
}

namespace {

void fill_point_distances(const SystemSpec& system, std::span<const Point> a,
                          std::span<const Point> b, std::vector<double>& out) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  switch (system.geometry()) {
    case Geometry::Circle:
    case Geometry::Line: {
      const bool circle = system.geometry() == Geometry::Circle;
      for (std::size_t i = 0; i < m; ++i) {
        const double x = a[i].coordinate();
        for (std::size_t j = 0; j < n; ++j) {
          const double y = b[j].coordinate();
          out[i * n + j] = circle ? arc_distance(x, y) : std::fabs(x - y);
        }
      }
      return;
    }
    case Geometry::Symbolic: {
      const int horizon = system.shift_horizon();
      std::vector<std::uint64_t> wa(m), wb(n);
      for (std::size_t i = 0; i < m; ++i) wa[i] = a[i].symbols().window(horizon);
      for (std::size_t j = 0; j < n; ++j) wb[j] = b[j].symbols().window(horizon);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = window_distance(wa[i], wb[j], horizon);
      return;
    }
    case Geometry::Product: {
      std::vector<Point> a1, a2, b1, b2;
      a1.reserve(m);
      a2.reserve(m);
      b1.reserve(n);
      b2.reserve(n);
      for (const auto& p : a) {
        a1.push_back(p.first());
        a2.push_back(p.second());
      }
      for (const auto& p : b) {
        b1.push_back(p.first());
        b2.push_back(p.second());
      }
      fill_point_distances(system.first(), a1, b1, out);
      std::vector<double> other(m * n);
      fill_point_distances(system.second(), a2, b2, other);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], other[k]);
      return;
    }
  }
}

}  // namespace

std::vector<double> distance_matrix(const SystemSpec& system, std::span<const Point> a,
                                    std::span<const Point> b) {
  for (const auto& p : a) validate_point(system, p);
  for (const auto& p : b) validate_point(system, p);
  std::vector<double> out(a.size() * b.size());
  fill_point_distances(system, a, b, out);
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample points

Point build_example31_point(Example31Variant variant, std::span<const std::int64_t> block_rule,
                            int n_blocks) {
  require(n_blocks >= 1, "n_blocks must be at least 1");
  require(block_rule.size() >= static_cast<std::size_t>(n_blocks),
          "block rule has fewer than n_blocks entries");
  std::vector<std::uint8_t> prefix;
  std::uint8_t last = 0;
  for (int b = 1; b <= n_blocks; ++b) {
    const std::int64_t len = block_rule[static_cast<std::size_t>(b - 1)];
    require(len >= 1, "block lengths must be positive");
    const bool odd = (b % 2) == 1;
    const std::uint8_t symbol = (variant == Example31Variant::U) == odd ? 0 : 1;
    prefix.insert(prefix.end(), static_cast<std::size_t>(len), symbol);
    last = symbol;
  }
  return Point::shift(SymbolSequence(std::move(prefix), last == 0 ? TailRule::Zeros : TailRule::Ones));
}

}  // namespace orbitmetric
