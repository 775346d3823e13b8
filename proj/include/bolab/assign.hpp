#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

namespace bolab {

// Min-cost perfect matching on a square cost matrix (Hungarian algorithm,
// potentials formulation, O(n^3)).  cost is row-major n*n.
inline std::vector<int> hungarian(const std::vector<double>& cost, int n) {
  if (static_cast<int>(cost.size()) != n * n) throw std::invalid_argument("hungarian: bad size");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
        if (minv[j] < delta) { delta = minv[j]; j1 = j; }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
        else minv[j] -= delta;
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> match(n, -1);  // match[row] = col
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) match[p[j] - 1] = j - 1;
  return match;
}

}  // namespace bolab
