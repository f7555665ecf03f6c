#pragma once

#include <cstddef>
#include <span>

namespace orbitmetric {

/// Exact transportation cost between supplies (size m) and demands (size n)
/// under a row-major m x n cost matrix. Successive shortest augmenting paths
/// with Johnson potentials over the dense bipartite network.
double transport_cost(std::span<const double> supply, std::span<const double> demand,
                      std::span<const double> cost);

/// Maximum flow from supplies to demands when supply i may feed demand j only
/// if distance[i*n + j] <= threshold (Dinic).
double threshold_max_flow(std::span<const double> supply, std::span<const double> demand,
                          std::span<const double> distance, double threshold);

}  // namespace orbitmetric
