#include "support/oracles.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>

namespace latmcts::oracle {

std::vector<int> bfs_torus_distances(int side, Position src) {
  const size_t n = static_cast<size_t>(side) * static_cast<size_t>(side);
  std::vector<int> dist(n, -1);
  std::deque<Position> queue;
  dist[cell_index(side, src)] = 0;
  queue.push_back(src);
  GridConfig cfg;
  cfg.side = side;
  while (!queue.empty()) {
    const Position p = queue.front();
    queue.pop_front();
    const int d = dist[cell_index(side, p)];
    for (Direction dir : kDirections) {
      const Position q = step(p, dir, cfg);
      int& dq = dist[cell_index(side, q)];
      if (dq < 0) {
        dq = d + 1;
        queue.push_back(q);
      }
    }
  }
  return dist;
}

std::vector<double> rw_hitting_times(int side, Position target, int vision_radius) {
  const int n_cells = side * side;
  std::vector<bool> absorbing(static_cast<size_t>(n_cells), false);
  for (int y = 1; y <= side; ++y)
    for (int x = 1; x <= side; ++x)
      if (torus_l1({x, y}, target, side) <= vision_radius)
        absorbing[cell_index(side, {x, y})] = true;

  // unknowns: transient cells only
  std::vector<int> unknown_of_cell(static_cast<size_t>(n_cells), -1);
  std::vector<size_t> cell_of_unknown;
  for (int c = 0; c < n_cells; ++c) {
    if (!absorbing[static_cast<size_t>(c)]) {
      unknown_of_cell[static_cast<size_t>(c)] = static_cast<int>(cell_of_unknown.size());
      cell_of_unknown.push_back(static_cast<size_t>(c));
    }
  }
  const int m = static_cast<int>(cell_of_unknown.size());
  std::vector<std::vector<double>> a(static_cast<size_t>(m),
                                     std::vector<double>(static_cast<size_t>(m + 1), 0.0));
  GridConfig cfg;
  cfg.side = side;
  for (int r = 0; r < m; ++r) {
    const size_t cell = cell_of_unknown[static_cast<size_t>(r)];
    const Position p{static_cast<int>(cell % static_cast<size_t>(side)) + 1,
                     static_cast<int>(cell / static_cast<size_t>(side)) + 1};
    a[static_cast<size_t>(r)][static_cast<size_t>(r)] = 1.0;
    a[static_cast<size_t>(r)][static_cast<size_t>(m)] = 1.0;
    for (Direction dir : kDirections) {
      const Position q = step(p, dir, cfg);
      const int uq = unknown_of_cell[cell_index(side, q)];
      if (uq >= 0) a[static_cast<size_t>(r)][static_cast<size_t>(uq)] -= 0.25;
    }
  }

  // gaussian elimination, partial pivoting
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::abs(a[static_cast<size_t>(pivot)][static_cast<size_t>(col)]))
        pivot = r;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
    const double diag = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    if (std::abs(diag) < 1e-12) throw std::runtime_error("singular hitting-time system");
    for (int c = col; c <= m; ++c) a[static_cast<size_t>(col)][static_cast<size_t>(c)] /= diag;
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0.0) continue;
      for (int c = col; c <= m; ++c)
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
    }
  }

  std::vector<double> h(static_cast<size_t>(n_cells), 0.0);
  for (int r = 0; r < m; ++r)
    h[cell_of_unknown[static_cast<size_t>(r)]] = a[static_cast<size_t>(r)][static_cast<size_t>(m)];
  return h;
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

std::vector<double> wrapped_round_gauss_pmf(int side, double mean, double sigma) {
  std::vector<double> pmf(static_cast<size_t>(side), 0.0);
  if (sigma == 0.0) {
    const long long r = static_cast<long long>(std::floor(mean + 0.5));
    long long m = (r - 1) % side;
    if (m < 0) m += side;
    pmf[static_cast<size_t>(m)] = 1.0;
    return pmf;
  }
  // round-half-up maps (m - 0.5, m + 0.5] to m; sum the normal mass of every
  // integer congruent to each lattice coordinate
  const long long lo = static_cast<long long>(std::floor(mean - 12.0 * sigma));
  const long long hi = static_cast<long long>(std::ceil(mean + 12.0 * sigma));
  for (long long v = lo; v <= hi; ++v) {
    const double p = normal_cdf((static_cast<double>(v) + 0.5 - mean) / sigma) -
                     normal_cdf((static_cast<double>(v) - 0.5 - mean) / sigma);
    long long m = (v - 1) % side;
    if (m < 0) m += side;
    pmf[static_cast<size_t>(m)] += p;
  }
  return pmf;
}

long nsarw_reference_steps(int side, Position start, Position target, int vision_radius,
                           uint64_t seed) {
  std::mt19937 gen(static_cast<uint32_t>(seed ^ (seed >> 32)));
  std::vector<int> counts(static_cast<size_t>(side) * static_cast<size_t>(side), 0);
  auto idx = [side](int x, int y) {
    return static_cast<size_t>(y) * static_cast<size_t>(side) + static_cast<size_t>(x);
  };
  auto wrapped_dist = [side](int a, int b) {
    int d = std::abs(a - b);
    return std::min(d, side - d);
  };
  // 0-based internally
  int x = start.x - 1, y = start.y - 1;
  const int tx = target.x - 1, ty = target.y - 1;
  counts[idx(x, y)] = 1;
  long steps = 0;
  const int moves[4][2] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}};
  while (wrapped_dist(x, tx) + wrapped_dist(y, ty) > vision_radius) {
    int best = INT32_MAX;
    int options[4];
    int n_opt = 0;
    for (int k = 0; k < 4; ++k) {
      const int nx = (x + moves[k][0] + side) % side;
      const int ny = (y + moves[k][1] + side) % side;
      const int c = counts[idx(nx, ny)];
      if (c < best) {
        best = c;
        n_opt = 0;
        options[n_opt++] = k;
      } else if (c == best) {
        options[n_opt++] = k;
      }
    }
    std::uniform_int_distribution<int> pick(0, n_opt - 1);
    const int k = options[pick(gen)];
    x = (x + moves[k][0] + side) % side;
    y = (y + moves[k][1] + side) % side;
    ++counts[idx(x, y)];
    ++steps;
    if (steps > 1000000L) break;  // safety, never expected
  }
  return steps;
}

}  // namespace latmcts::oracle
