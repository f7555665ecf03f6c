#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orbitmetric/cost_matrix.hpp"

namespace orbitmetric {

/// Bijection of {0, ..., n-1}; mapping[k] = sigma(k).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return mapping_.size(); }
  int operator[](std::size_t k) const noexcept { return mapping_[k]; }
  const std::vector<int>& mapping() const noexcept { return mapping_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> mapping_;
};

struct Assignment {
  Permutation permutation;
  double total_cost = 0.0;
};

/// sum_k C[k][sigma(k)], accumulated in index order.
double permutation_cost(const CostMatrix& cost, const Permutation& sigma);

inline constexpr std::size_t kBruteForceLimit = 9;

/// Exact minimum-cost perfect assignment (shortest augmenting paths with
/// dual potentials, O(n^3)). Only the optimal cost is contractual; among
/// tied optima any permutation may be returned.
Assignment min_cost_assignment(const CostMatrix& cost);

/// Literal minimum over all n! permutations. n <= 9.
Assignment brute_force_assignment(const CostMatrix& cost);

/// Compressed adjacency of a bipartite graph with `left` and `right` vertices.
struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::size_t> offsets;  // size left + 1
  std::vector<int> targets;
};

/// Hopcroft-Karp. Returns match_left (right partner or -1 per left vertex).
std::vector<int> maximum_matching(const BipartiteGraph& graph);

/// Size of a maximum matching restricted to pairs with C[i][j] <= delta.
std::size_t max_matching_under_threshold(const CostMatrix& cost, double delta);

/// Nonnegative square matrix whose rows and columns all sum to 1.
class BistochasticMatrix {
 public:
  /// Throws not-bistochastic when a row or column sum is off by more than 1e-6
  /// or an entry is negative.
  BistochasticMatrix(std::size_t n, std::vector<double> entries);
  static BistochasticMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

struct DecompositionTerm {
  double weight = 0.0;
  Permutation permutation;
};

struct ConvexDecomposition {
  std::vector<DecompositionTerm> terms;

  double weight_sum() const noexcept;
  /// sum_terms weight * P_sigma, row-major.
  std::vector<double> reconstruct(std::size_t n) const;
};

/// Birkhoff-von Neumann decomposition by peeling perfect matchings off the
/// positive support, followed by a Caratheodory reduction that caps the term
/// count at (n-1)^2 + 1.
ConvexDecomposition birkhoff_decompose(const BistochasticMatrix& matrix);

}  // namespace orbitmetric
