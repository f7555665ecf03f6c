#include "orbitmetric/matching.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "orbitmetric/errors.hpp"

namespace orbitmetric {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<char> seen(mapping_.size(), 0);
  for (int v : mapping_) {
    require(v >= 0 && static_cast<std::size_t>(v) < mapping_.size() && !seen[v],
            "mapping is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

double permutation_cost(const CostMatrix& cost, const Permutation& sigma) {
  require(sigma.size() == cost.size(), "permutation size does not match cost matrix");
  double total = 0.0;
  for (std::size_t k = 0; k < cost.size(); ++k) total += cost(k, static_cast<std::size_t>(sigma[k]));
  return total;
}

namespace {

void validate_costs(const CostMatrix& cost) {
  for (double v : cost.entries()) {
    require(std::isfinite(v), "cost matrix has a non-finite entry");
    require(v >= 0.0, "cost matrix has a negative entry");
  }
}

}  // namespace

Assignment min_cost_assignment(const CostMatrix& cost) {
  validate_costs(cost);
  const std::size_t n = cost.size();
  if (n == 0) return {Permutation{}, 0.0};

  // 1-indexed rows/columns; column 0 is the virtual root of each search.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      const auto row = cost.row(i0 - 1);
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> mapping(n);
  for (std::size_t j = 1; j <= n; ++j) mapping[row_of[j] - 1] = static_cast<int>(j - 1);
  Permutation sigma(std::move(mapping));
  const double total = permutation_cost(cost, sigma);
  return {std::move(sigma), total};
}

Assignment brute_force_assignment(const CostMatrix& cost) {
  validate_costs(cost);
  const std::size_t n = cost.size();
  if (n > kBruteForceLimit) {
    fail(ErrorKind::SizeLimit, "brute-force assignment is limited to n <= 9, got " +
                                   std::to_string(n));
  }
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  std::vector<int> best = mapping;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += cost(k, static_cast<std::size_t>(mapping[k]));
    if (total < best_cost) {
      best_cost = total;
      best = mapping;
    }
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  if (n == 0) best_cost = 0.0;
  return {Permutation(std::move(best)), best_cost};
}

// ---------------------------------------------------------------------------
// Hopcroft-Karp

namespace {

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), match_left_(g.left, -1), match_right_(g.right, -1), level_(g.left), cursor_(g.left) {}

  std::vector<int> run() {
    while (bfs()) {
      for (std::size_t i = 0; i < g_.left; ++i) cursor_[i] = g_.offsets[i];
      for (std::size_t i = 0; i < g_.left; ++i) {
        if (match_left_[i] == -1) dfs(static_cast<int>(i));
      }
    }
    return std::move(match_left_);
  }

 private:
  static constexpr int kUnreached = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> queue;
    for (std::size_t i = 0; i < g_.left; ++i) {
      if (match_left_[i] == -1) {
        level_[i] = 0;
        queue.push(static_cast<int>(i));
      } else {
        level_[i] = kUnreached;
      }
    }
    bool found_free = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (std::size_t e = g_.offsets[u]; e < g_.offsets[u + 1]; ++e) {
        const int partner = match_right_[g_.targets[e]];
        if (partner == -1) {
          found_free = true;
        } else if (level_[partner] == kUnreached) {
          level_[partner] = level_[u] + 1;
          queue.push(partner);
        }
      }
    }
    return found_free;
  }

  bool dfs(int u) {
    for (std::size_t& e = cursor_[u]; e < g_.offsets[u + 1]; ++e) {
      const int v = g_.targets[e];
      const int partner = match_right_[v];
      if (partner == -1 || (level_[partner] == level_[u] + 1 && dfs(partner))) {
        match_left_[u] = v;
        match_right_[v] = u;
        ++e;
        return true;
      }
    }
    level_[u] = kUnreached;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

BipartiteGraph threshold_graph(const CostMatrix& cost, double delta) {
  BipartiteGraph g;
  g.left = g.right = cost.size();
  g.offsets.reserve(cost.size() + 1);
  g.offsets.push_back(0);
  for (std::size_t i = 0; i < cost.size(); ++i) {
    const auto row = cost.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= delta) g.targets.push_back(static_cast<int>(j));
    }
    g.offsets.push_back(g.targets.size());
  }
  return g;
}

}  // namespace

std::vector<int> maximum_matching(const BipartiteGraph& graph) {
  require(graph.offsets.size() == graph.left + 1, "adjacency offsets do not match vertex count");
  return HopcroftKarp(graph).run();
}

std::size_t max_matching_under_threshold(const CostMatrix& cost, double delta) {
  validate_costs(cost);
  require(std::isfinite(delta) && delta >= 0.0, "threshold must be a finite nonnegative number");
  const auto match = maximum_matching(threshold_graph(cost, delta));
  return static_cast<std::size_t>(std::count_if(match.begin(), match.end(), [](int v) { return v >= 0; }));
}

// ---------------------------------------------------------------------------
// Birkhoff-von Neumann

BistochasticMatrix::BistochasticMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  require(entries_.size() == n_ * n_, "bistochastic storage does not match its size");
  constexpr double tol = 1e-6;
  for (double v : entries_) {
    if (!std::isfinite(v) || v < 0.0) fail(ErrorKind::NotBistochastic, "entry is negative or not finite");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      row += entries_[i * n_ + j];
      col += entries_[j * n_ + i];
    }
    if (std::fabs(row - 1.0) > tol) {
      fail(ErrorKind::NotBistochastic, "row " + std::to_string(i) + " sums to " + std::to_string(row));
    }
    if (std::fabs(col - 1.0) > tol) {
      fail(ErrorKind::NotBistochastic, "column " + std::to_string(i) + " sums to " + std::to_string(col));
    }
  }
}

BistochasticMatrix BistochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    require(row.size() == n, "bistochastic matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return BistochasticMatrix(n, std::move(flat));
}

double ConvexDecomposition::weight_sum() const noexcept {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

std::vector<double> ConvexDecomposition::reconstruct(std::size_t n) const {
  std::vector<double> out(n * n, 0.0);
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < n; ++i) out[i * n + static_cast<std::size_t>(t.permutation[i])] += t.weight;
  }
  return out;
}

namespace {

constexpr double kResidualFloor = 1e-9;

// Drops terms until the permutation matrices are affinely independent, which
// leaves at most (n-1)^2 + 1 of them.
void caratheodory_reduce(std::vector<DecompositionTerm>& terms, std::size_t n) {
  const std::size_t bound = (n - 1) * (n - 1) + 1;
  while (terms.size() > bound) {
    const auto m = static_cast<Eigen::Index>(terms.size());
    const auto rows = static_cast<Eigen::Index>(n * n + 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& sigma = terms[static_cast<std::size_t>(k)].permutation;
      for (std::size_t i = 0; i < n; ++i) {
        a(static_cast<Eigen::Index>(i * n + static_cast<std::size_t>(sigma[i])), k) = 1.0;
      }
      a(rows - 1, k) = 1.0;
    }
    const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(a).kernel();
    Eigen::VectorXd c = kernel.col(0);
    if (c.maxCoeff() <= 0.0) c = -c;

    double step = std::numeric_limits<double>::infinity();
    Eigen::Index drop = -1;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (c(k) > 1e-12) {
        const double t = terms[static_cast<std::size_t>(k)].weight / c(k);
        if (t < step) {
          step = t;
          drop = k;
        }
      }
    }
    if (drop < 0) fail(ErrorKind::DecompositionFailure, "Caratheodory reduction found no direction");
    for (Eigen::Index k = 0; k < m; ++k) terms[static_cast<std::size_t>(k)].weight -= step * c(k);
    terms[static_cast<std::size_t>(drop)].weight = 0.0;
    std::erase_if(terms, [](const DecompositionTerm& t) { return t.weight <= 0.0; });
  }
}

}  // namespace

ConvexDecomposition birkhoff_decompose(const BistochasticMatrix& matrix) {
  const std::size_t n = matrix.size();
  ConvexDecomposition out;
  if (n == 0) return out;
  std::vector<double> residual(matrix.entries().begin(), matrix.entries().end());

  for (;;) {
    bool any = false;
    for (double& v : residual) {
      if (v < kResidualFloor) v = 0.0;
      else any = true;
    }
    if (!any) break;

    BipartiteGraph support;
    support.left = support.right = n;
    support.offsets.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (residual[i * n + j] > 0.0) support.targets.push_back(static_cast<int>(j));
      }
      support.offsets.push_back(support.targets.size());
    }
    auto match = maximum_matching(support);
    if (std::any_of(match.begin(), match.end(), [](int v) { return v < 0; })) {
      fail(ErrorKind::DecompositionFailure, "positive support has no perfect matching");
    }

    std::size_t argmin = 0;
    double weight = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double v = residual[i * n + static_cast<std::size_t>(match[i])];
      if (v < weight) {
        weight = v;
        argmin = i;
      }
    }
    for (std::size_t i = 0; i < n; ++i) residual[i * n + static_cast<std::size_t>(match[i])] -= weight;
    residual[argmin * n + static_cast<std::size_t>(match[argmin])] = 0.0;
    out.terms.push_back({weight, Permutation(std::move(match))});
  }

  std::map<std::vector<int>, double> merged;
  for (const auto& t : out.terms) merged[t.permutation.mapping()] += t.weight;
  out.terms.clear();
  for (auto& [mapping, weight] : merged) out.terms.push_back({weight, Permutation(mapping)});

  caratheodory_reduce(out.terms, n);

  const double total = out.weight_sum();
  for (auto& t : out.terms) t.weight /= total;
  return out;
}

}  // namespace orbitmetric
