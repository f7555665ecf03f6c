#include "orbitmetric/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "orbitmetric/errors.hpp"

namespace orbitmetric {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng();
    out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
  }
  return out;
}

Point run_then_tail(std::uint8_t symbol, std::size_t run, TailRule tail) {
  return Point::shift(SymbolSequence(std::vector<std::uint8_t>(run, symbol), tail));
}

}  // namespace

Point sample_point(const SystemSpec& system, std::mt19937_64& rng, std::size_t symbols) {
  switch (system.geometry()) {
    case Geometry::Circle: return Point::circle(uniform01(rng));
    case Geometry::Line: return Point::interval(uniform01(rng));
    case Geometry::Symbolic:
      return Point::shift(SymbolSequence(random_bits(rng, symbols), TailRule::Finite));
    case Geometry::Product: {
      Point a = sample_point(system.first(), rng, symbols);
      Point b = sample_point(system.second(), rng, symbols);
      return Point::pair(std::move(a), std::move(b));
    }
  }
  return {};
}

int shift_depth_for(double delta) {
  require(delta > 0.0, "delta must be positive");
  if (delta >= 1.0) return 0;
  int k = static_cast<int>(std::ceil(-std::log2(delta)));
  while (k > 0 && std::ldexp(1.0, -(k - 1)) <= delta) --k;
  while (std::ldexp(1.0, -k) > delta) ++k;
  return k;
}

Point propose_near(const SystemSpec& system, const Point& x, double delta, std::mt19937_64& rng,
                   std::size_t symbols) {
  const double u = 2.0 * uniform01(rng) - 1.0;
  switch (system.geometry()) {
    case Geometry::Circle: {
      double y = x.coordinate() + u * std::min(delta, 0.5);
      y -= std::floor(y);
      if (y >= 1.0) y = 0.0;
      return Point::circle(y);
    }
    case Geometry::Line:
      return Point::interval(std::clamp(x.coordinate() + u * delta, 0.0, 1.0));
    case Geometry::Symbolic: {
      const int depth = shift_depth_for(delta);
      const int top = system.shift_horizon() + 5;
      const int keep = depth >= top ? depth
                                    : depth + static_cast<int>(rng() % static_cast<std::uint64_t>(top - depth + 1));
      const auto& s = x.symbols();
      std::vector<std::uint8_t> word = random_bits(rng, symbols);
      for (std::size_t i = 0; i < std::min<std::size_t>(static_cast<std::size_t>(keep), symbols); ++i) {
        word[i] = s.symbol(i);
      }
      return Point::shift(SymbolSequence(std::move(word), TailRule::Finite));
    }
    case Geometry::Product: {
      Point a = propose_near(system.first(), x.first(), delta, rng, symbols);
      Point b = propose_near(system.second(), x.second(), delta, rng, symbols);
      return Point::pair(std::move(a), std::move(b));
    }
  }
  return {};
}

std::vector<Point> sample_points(const SystemSpec& system, std::size_t count, std::uint64_t seed,
                                 std::size_t symbols) {
  std::vector<Point> out;
  out.reserve(count);
  if (system.geometry() == Geometry::Symbolic) {
    if (out.size() < count) out.push_back(Point::shift(SymbolSequence::constant(0)));
    if (out.size() < count) out.push_back(Point::shift(SymbolSequence::constant(1)));
  }
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    auto rng = stream_rng(seed, i);
    out.push_back(sample_point(system, rng, symbols));
  }
  return out;
}

std::vector<std::pair<Point, Point>> sample_close_pairs(const SystemSpec& system, double delta,
                                                        std::size_t count, std::uint64_t seed,
                                                        std::size_t symbols) {
  require(std::isfinite(delta) && delta > 0.0, "delta must be a finite positive number");
  std::vector<std::pair<Point, Point>> out;
  if (system.geometry() == Geometry::Symbolic) {
    const int depth = shift_depth_for(delta);
    for (int k : {depth, depth + 2}) {
      if (k >= system.shift_horizon()) continue;
      const auto run = static_cast<std::size_t>(k);
      out.emplace_back(Point::shift(SymbolSequence::constant(0)), run_then_tail(0, run, TailRule::Ones));
      out.emplace_back(Point::shift(SymbolSequence::constant(1)), run_then_tail(1, run, TailRule::Zeros));
    }
  }
  const std::size_t budget = 1000 * std::max<std::size_t>(count, 1);
  std::size_t accepted = 0;
  for (std::uint64_t attempt = 0; accepted < count; ++attempt) {
    if (attempt >= budget) {
      fail(ErrorKind::SamplingError, "could not draw " + std::to_string(count) +
                                         " pairs within delta after " + std::to_string(budget) +
                                         " proposals");
    }
    auto rng = stream_rng(seed, attempt);
    Point x = sample_point(system, rng, symbols);
    Point y = propose_near(system, x, delta, rng, symbols);
    if (dist(system, x, y) <= delta) {
      out.emplace_back(std::move(x), std::move(y));
      ++accepted;
    }
  }
  return out;
}

namespace {

const OrbitSegment& base_factor(const OrbitSegment& seg) {
  const OrbitSegment* s = &seg;
  while (s->system().geometry() == Geometry::Product) s = &s->first();
  return *s;
}

Observable scalar_only(const SystemSpec& leaf, const std::string& name,
                       std::function<double(double)> f) {
  require(leaf.is_scalar(), "observable '" + name + "' needs a circle or interval system");
  return [f = std::move(f)](const OrbitSegment& seg, std::size_t k) {
    return f(base_factor(seg).coordinates()[k]);
  };
}

}  // namespace

Observable make_observable(const SystemSpec& system, const std::string& name) {
  const SystemSpec* leaf = &system;
  while (leaf->geometry() == Geometry::Product) leaf = &leaf->first();

  if (name == "constant" || name.rfind("constant:", 0) == 0) {
    double c = 1.0;
    if (name.size() > 9) {
      try {
        std::size_t used = 0;
        c = std::stod(name.substr(9), &used);
        require(used == name.size() - 9 && std::isfinite(c), "bad constant");
      } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidArgument, "malformed constant observable '" + name + "'");
      }
    }
    return [c](const OrbitSegment&, std::size_t) { return c; };
  }
  if (name == "coordinate") return scalar_only(*leaf, name, [](double x) { return x; });
  if (name == "cos2pi") {
    require(leaf->geometry() == Geometry::Circle, "cos2pi needs a circle system");
    return scalar_only(*leaf, name, [](double x) { return std::cos(2 * std::numbers::pi * x); });
  }
  if (name == "sin2pi") {
    require(leaf->geometry() == Geometry::Circle, "sin2pi needs a circle system");
    return scalar_only(*leaf, name, [](double x) { return std::sin(2 * std::numbers::pi * x); });
  }
  if (name == "bump") {
    const bool circle = leaf->geometry() == Geometry::Circle;
    return scalar_only(*leaf, name, [circle](double x) {
      double t = std::abs(x - 0.5);
      if (circle) t = std::min(t, 1.0 - t);
      const double s = t / 0.25;
      return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
    });
  }
  if (name == "first_symbol") {
    require(leaf->geometry() == Geometry::Symbolic, "first_symbol needs a shift system");
    return [](const OrbitSegment& seg, std::size_t k) {
      return static_cast<double>(base_factor(seg).symbols()[k]);
    };
  }
  if (name.rfind("cylinder:", 0) == 0) {
    require(leaf->geometry() == Geometry::Symbolic, "cylinder observables need a shift system");
    std::vector<std::uint8_t> word;
    for (char c : name.substr(9)) {
      require(c == '0' || c == '1', "cylinder word must be binary");
      word.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    require(!word.empty() && word.size() <= static_cast<std::size_t>(leaf->shift_horizon()),
            "cylinder word length must lie in [1, shift_horizon]");
    return [word](const OrbitSegment& seg, std::size_t k) {
      const auto s = base_factor(seg).symbols();
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (s[k + i] != word[i]) return 0.0;
      }
      return 1.0;
    };
  }
  fail(ErrorKind::InvalidArgument, "unknown observable '" + name + "'");
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORBITMETRIC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<std::size_t>(v);
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace orbitmetric
