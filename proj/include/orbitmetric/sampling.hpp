#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbitmetric/systems.hpp"

namespace orbitmetric {

/// Independent deterministic stream for item `stream` under a run seed.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Random state of `system`. Shift states are finite words of `symbols` letters.
Point sample_point(const SystemSpec& system, std::mt19937_64& rng, std::size_t symbols);

/// Candidate partner within delta of x (before the rejection check).
Point propose_near(const SystemSpec& system, const Point& x, double delta, std::mt19937_64& rng,
                   std::size_t symbols);

/// Smallest k with 2^-k <= delta.
int shift_depth_for(double delta);

/// `count` sample states; for shifts the constant sequences 0... and 1... come first.
std::vector<Point> sample_points(const SystemSpec& system, std::size_t count, std::uint64_t seed,
                                 std::size_t symbols);

/// Pairs with d(x, y) <= delta: the adversarial shift family (0..., 0^k 1...)
/// and (1..., 1^k 0...) first, then `count` random pairs. Throws sampling-error
/// when 1000 * count proposals do not yield enough accepted pairs.
std::vector<std::pair<Point, Point>> sample_close_pairs(const SystemSpec& system, double delta,
                                                        std::size_t count, std::uint64_t seed,
                                                        std::size_t symbols);

using Observable = std::function<double(const OrbitSegment&, std::size_t)>;

/// Named continuous observables: constant[:c], coordinate, cos2pi, sin2pi,
/// bump, first_symbol, cylinder:<word>. On products they read the first factor.
Observable make_observable(const SystemSpec& system, const std::string& name);

/// Runs body(i) for i in [0, count) on up to ORBITMETRIC_THREADS threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace orbitmetric
