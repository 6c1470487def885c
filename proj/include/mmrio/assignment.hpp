// Linear sum assignment (Munkres) on a dense cost matrix.
//
// Shortest-augmenting-path formulation, O(n^3). Rectangular inputs are
// padded internally with zero-cost dummy rows/columns, so the result is a
// complete one-to-one assignment of the smaller dimension. Rows are
// processed in ascending order, which makes tie-breaking deterministic
// (lowest row index first).
#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mmrio/core.hpp"

namespace mmrio {

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), sorted by row
  double cost = 0.0;                       // sum of assigned entries
};

/// Minimum-cost complete assignment of the smaller dimension of `cost`.
/// Empty matrices yield an empty assignment. Throws ConfigError on
/// non-finite entries.
inline Assignment munkres(const Eigen::MatrixXd& cost) {
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  Assignment out;
  if (rows == 0 || cols == 0) return out;
  if (!cost.allFinite()) {
    throw ConfigError("munkres: cost matrix has non-finite entries");
  }

  const int n = std::max(rows, cols);
  auto at = [&](int r, int c) -> double {
    return (r < rows && c < cols) ? cost(r, c) : 0.0;  // zero-cost padding
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Dual potentials and column -> row matching, 1-based with column 0 as
  // the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  }
  for (int r = 0; r < rows; ++r) {
    const int c = row_to_col[r];
    if (c >= 0 && c < cols) {
      out.pairs.emplace_back(r, c);
      out.cost += cost(r, c);
    }
  }
  return out;
}

}  // namespace mmrio
