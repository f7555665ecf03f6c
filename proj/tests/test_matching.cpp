#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include "orbitmetric/matching.hpp"
#include "orbitmetric/sampling.hpp"
#include "test_util.hpp"

using namespace orbitmetric;

namespace {

CostMatrix random_cost(std::mt19937_64& rng, std::size_t n, bool integer = false) {
  std::vector<double> e(n * n);
  for (double& v : e) v = integer ? static_cast<double>(rng() % 4) : uniform01(rng);
  return CostMatrix(n, std::move(e));
}

std::size_t brute_matching(const BipartiteGraph& g) {
  std::vector<int> perm(g.right);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.left; ++i) {
      for (std::size_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        if (g.targets[e] == perm[i]) {
          ++count;
          break;
        }
      }
    }
    best = std::max(best, count);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("permutations validate bijectivity") {
  CHECK_NOTHROW(Permutation({2, 0, 1}));
  CHECK_ERROR_KIND(Permutation({0, 0, 1}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Permutation({0, 3}), ErrorKind::InvalidArgument);
  CHECK(Permutation::identity(3).mapping() == std::vector<int>{0, 1, 2});
}

TEST_CASE("hand-checked assignment") {
  const auto c = CostMatrix::from_rows({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}});
  const auto a = min_cost_assignment(c);
  CHECK(a.total_cost == 5.0);
  CHECK(permutation_cost(c, a.permutation) == 5.0);
  CHECK(brute_force_assignment(c).total_cost == 5.0);
  CHECK(min_cost_assignment(CostMatrix::from_rows({{7}})).total_cost == 7.0);
  CHECK(min_cost_assignment(CostMatrix(0, {})).total_cost == 0.0);
}

TEST_CASE("Hungarian equals brute force on random and tie-heavy matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const auto c = random_cost(rng, n, t % 2 == 1);
    CHECK(std::abs(min_cost_assignment(c).total_cost - brute_force_assignment(c).total_cost) <= 1e-12);
  }
}

TEST_CASE("assignment cost scales linearly and ignores row permutations") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto c = random_cost(rng, 12);
    const double base = min_cost_assignment(c).total_cost;
    CHECK(min_cost_assignment(c.scaled(3.5)).total_cost == doctest::Approx(3.5 * base).epsilon(1e-12));
    std::vector<double> swapped(c.entries().begin(), c.entries().end());
    for (std::size_t j = 0; j < 12; ++j) std::swap(swapped[j], swapped[5 * 12 + j]);
    CHECK(min_cost_assignment(CostMatrix(12, swapped)).total_cost == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("assignment input errors") {
  CHECK_ERROR_KIND(CostMatrix::from_rows({{1, 2}, {3}}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(min_cost_assignment(CostMatrix::from_rows({{1, -1}, {0, 0}})), ErrorKind::InvalidArgument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_ERROR_KIND(min_cost_assignment(CostMatrix::from_rows({{1, inf}, {0, 0}})), ErrorKind::InvalidArgument);
  std::mt19937_64 rng(9);
  CHECK_ERROR_KIND(brute_force_assignment(random_cost(rng, 10)), ErrorKind::SizeLimit);
}

TEST_CASE("Hopcroft-Karp matches exhaustive search") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 7);
    BipartiteGraph g;
    g.left = g.right = n;
    g.offsets.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (uniform01(rng) < 0.3) g.targets.push_back(static_cast<int>(j));
      g.offsets.push_back(g.targets.size());
    }
    const auto match = maximum_matching(g);
    std::vector<char> used(n, 0);
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (match[i] < 0) continue;
      ++size;
      CHECK_FALSE(used[static_cast<std::size_t>(match[i])]);
      used[static_cast<std::size_t>(match[i])] = 1;
      const auto begin = g.targets.begin() + static_cast<std::ptrdiff_t>(g.offsets[i]);
      const auto end = g.targets.begin() + static_cast<std::ptrdiff_t>(g.offsets[i + 1]);
      CHECK(std::find(begin, end, match[i]) != end);
    }
    CHECK(size == brute_matching(g));
  }
}

TEST_CASE("threshold matching") {
  const auto c = CostMatrix::from_rows({{0.1, 0.9}, {0.2, 0.8}});
  CHECK(max_matching_under_threshold(c, 0.5) == 1);
  CHECK(max_matching_under_threshold(c, 0.9) == 2);
  CHECK(max_matching_under_threshold(c, 0.0) == 0);
  CHECK_ERROR_KIND(max_matching_under_threshold(c, -0.1), ErrorKind::InvalidArgument);
}

TEST_CASE("bistochastic validation") {
  CHECK_NOTHROW(BistochasticMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
  CHECK_ERROR_KIND(BistochasticMatrix::from_rows({{0.6, 0.5}, {0.4, 0.5}}), ErrorKind::NotBistochastic);
  CHECK_ERROR_KIND(BistochasticMatrix::from_rows({{1.5, -0.5}, {-0.5, 1.5}}), ErrorKind::NotBistochastic);
}

TEST_CASE("Birkhoff decomposition") {
  const auto id = birkhoff_decompose(BistochasticMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(id.terms.size() == 1);
  CHECK(id.terms[0].weight == doctest::Approx(1.0));
  CHECK(id.terms[0].permutation == Permutation::identity(3));

  const std::size_t n = 5;
  std::vector<double> uniform(n * n, 1.0 / n);
  const auto dec = birkhoff_decompose(BistochasticMatrix(n, uniform));
  CHECK(dec.terms.size() <= (n - 1) * (n - 1) + 1);
  CHECK(dec.weight_sum() == doctest::Approx(1.0).epsilon(1e-12));
  const auto back = dec.reconstruct(n);
  for (std::size_t i = 0; i < n * n; ++i) CHECK(back[i] == doctest::Approx(uniform[i]).epsilon(1e-9));
  for (const auto& t : dec.terms) CHECK(t.weight > 0.0);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t % 6);
    std::vector<double> mat(m * m, 0.0);
    for (int k = 0; k < 30; ++k) {
      std::vector<int> p(m);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      for (std::size_t i = 0; i < m; ++i) mat[i * m + static_cast<std::size_t>(p[i])] += 1.0 / 30.0;
    }
    const auto d = birkhoff_decompose(BistochasticMatrix(m, mat));
    CHECK(d.terms.size() <= (m - 1) * (m - 1) + 1);
    const auto r = d.reconstruct(m);
    for (std::size_t i = 0; i < m * m; ++i) CHECK(std::abs(r[i] - mat[i]) <= 1e-7);
  }
}

}
