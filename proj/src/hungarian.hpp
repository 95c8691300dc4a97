#pragma once

#include <cstdint>
#include <vector>

namespace voxplore {

/// Minimum-cost perfect assignment on a square cost matrix (Kuhn-Munkres with
/// row potentials, O(n^3)). `cost[i][j]` is the cost of giving row i column j.
/// Returns, for each row, the assigned column. Deterministic: equal-cost
/// optima resolve by the fixed scan order of the algorithm.
std::vector<std::int32_t> solve_assignment_min_cost(
    const std::vector<std::vector<double>>& cost);

}  // namespace voxplore
