#include "hungarian.hpp"

#include <limits>

#include "errors.hpp"

namespace voxplore {

std::vector<std::int32_t> solve_assignment_min_cost(
    const std::vector<std::vector<double>>& cost) {
  const std::int32_t n = static_cast<std::int32_t>(cost.size());
  if (n == 0) return {};
  for (const auto& row : cost) {
    if (static_cast<std::int32_t>(row.size()) != n) {
      raise(Err::InvalidArgument, "assignment matrix must be square");
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials over rows (u) and columns (v); p[j] is the row matched
  // to column j, with column 0 as the staging slot for the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::int32_t> p(n + 1, 0), way(n + 1, 0);

  for (std::int32_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::int32_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::int32_t i0 = p[j0];
      double delta = kInf;
      std::int32_t j1 = 0;
      for (std::int32_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::int32_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::int32_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::int32_t> row_to_col(n, -1);
  for (std::int32_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace voxplore
