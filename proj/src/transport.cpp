#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "orbitmetric/errors.hpp"
#include "orbitmetric/flow.hpp"

namespace orbitmetric {

namespace {

constexpr double kMassEpsilon = 1e-14;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      std::span<const double> cost) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  require(cost.size() == m * n, "transport cost matrix has the wrong size");
  if (m == 0 || n == 0) return 0.0;

  // Node layout: 0 = source, 1..m supplies, m+1..m+n demands, m+n+1 = sink.
  const std::size_t nodes = m + n + 2;
  const std::size_t source = 0;
  const std::size_t sink = m + n + 1;
  auto supply_node = [](std::size_t i) { return 1 + i; };
  auto demand_node = [m](std::size_t j) { return 1 + m + j; };

  std::vector<double> flow(m * n, 0.0);
  std::vector<double> sent(m, 0.0), received(n, 0.0);
  std::vector<double> potential(nodes, 0.0), distance(nodes);
  std::vector<std::size_t> parent(nodes);
  std::vector<char> done(nodes);

  double remaining = 0.0;
  for (double s : supply) remaining += s;

  const std::size_t max_iterations = 20 * nodes * nodes + 100;
  for (std::size_t iter = 0; remaining > kMassEpsilon; ++iter) {
    if (iter > max_iterations) fail(ErrorKind::InvalidArgument, "transport solver did not converge");

    std::fill(distance.begin(), distance.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    distance[source] = 0.0;

    auto relax = [&](std::size_t u, std::size_t v, double c) {
      const double reduced = std::max(0.0, c + potential[u] - potential[v]);
      const double candidate = distance[u] + reduced;
      if (candidate < distance[v]) {
        distance[v] = candidate;
        parent[v] = u;
      }
    };

    for (;;) {
      std::size_t u = nodes;
      double best = kInf;
      for (std::size_t v = 0; v < nodes; ++v) {
        if (!done[v] && distance[v] < best) {
          best = distance[v];
          u = v;
        }
      }
      if (u == nodes) break;
      done[u] = 1;
      if (u == source) {
        for (std::size_t i = 0; i < m; ++i)
          if (supply[i] - sent[i] > kMassEpsilon) relax(u, supply_node(i), 0.0);
      } else if (u <= m) {
        const std::size_t i = u - 1;
        if (sent[i] > kMassEpsilon) relax(u, source, 0.0);
        for (std::size_t j = 0; j < n; ++j) relax(u, demand_node(j), cost[i * n + j]);
      } else if (u < sink) {
        const std::size_t j = u - 1 - m;
        for (std::size_t i = 0; i < m; ++i)
          if (flow[i * n + j] > kMassEpsilon) relax(u, supply_node(i), -cost[i * n + j]);
        if (demand[j] - received[j] > kMassEpsilon) relax(u, sink, 0.0);
      } else {
        for (std::size_t j = 0; j < n; ++j)
          if (received[j] > kMassEpsilon) relax(u, demand_node(j), 0.0);
      }
    }
    if (distance[sink] == kInf) break;
    for (std::size_t v = 0; v < nodes; ++v) potential[v] += std::min(distance[v], distance[sink]);

    // Bottleneck along the path, then push.
    double amount = kInf;
    for (std::size_t v = sink; v != source; v = parent[v]) {
      const std::size_t u = parent[v];
      if (u == source) amount = std::min(amount, supply[v - 1] - sent[v - 1]);
      else if (v == sink) amount = std::min(amount, demand[u - 1 - m] - received[u - 1 - m]);
      else if (v == source) amount = std::min(amount, sent[u - 1]);
      else if (u == sink) amount = std::min(amount, received[v - 1 - m]);
      else if (u > m) amount = std::min(amount, flow[(v - 1) * n + (u - 1 - m)]);
    }
    for (std::size_t v = sink; v != source; v = parent[v]) {
      const std::size_t u = parent[v];
      if (u == source) sent[v - 1] += amount;
      else if (v == sink) received[u - 1 - m] += amount;
      else if (v == source) sent[u - 1] -= amount;
      else if (u == sink) received[v - 1 - m] -= amount;
      else if (u <= m) flow[(u - 1) * n + (v - 1 - m)] += amount;
      else flow[(v - 1) * n + (u - 1 - m)] -= amount;
    }
    remaining -= amount;
  }

  double total = 0.0;
  for (std::size_t k = 0; k < flow.size(); ++k) total += flow[k] * cost[k];
  return total;
}

// ---------------------------------------------------------------------------
// Dinic

namespace {

class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : head_(nodes, -1), level_(nodes), cursor_(nodes) {}

  void add_edge(std::size_t u, std::size_t v, double cap) {
    edges_.push_back({v, cap, head_[u]});
    head_[u] = static_cast<int>(edges_.size() - 1);
    edges_.push_back({u, 0.0, head_[v]});
    head_[v] = static_cast<int>(edges_.size() - 1);
  }

  double run(std::size_t s, std::size_t t) {
    double total = 0.0;
    while (bfs(s, t)) {
      cursor_ = head_;
      for (;;) {
        const double pushed = dfs(s, t, kInf);
        if (pushed <= kMassEpsilon) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    double cap;
    int next;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > kMassEpsilon && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(std::size_t u, std::size_t t, double limit) {
    if (u == t) return limit;
    for (int& e = cursor_[u]; e != -1; e = edges_[e].next) {
      Edge& edge = edges_[e];
      if (edge.cap > kMassEpsilon && level_[edge.to] == level_[u] + 1) {
        const double pushed = dfs(edge.to, t, std::min(limit, edge.cap));
        if (pushed > kMassEpsilon) {
          edge.cap -= pushed;
          edges_[e ^ 1].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> cursor_;
};

}  // namespace

double threshold_max_flow(std::span<const double> supply, std::span<const double> demand,
                          std::span<const double> distance, double threshold) {
  const std::size_t m = supply.size();
  const std::size_t n = demand.size();
  require(distance.size() == m * n, "distance matrix has the wrong size");
  Dinic dinic(m + n + 2);
  const std::size_t source = m + n;
  const std::size_t sink = m + n + 1;
  for (std::size_t i = 0; i < m; ++i) dinic.add_edge(source, i, supply[i]);
  for (std::size_t j = 0; j < n; ++j) dinic.add_edge(m + j, sink, demand[j]);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance[i * n + j] <= threshold) dinic.add_edge(i, m + j, supply[i]);
    }
  }
  return dinic.run(source, sink);
}

}  // namespace orbitmetric
