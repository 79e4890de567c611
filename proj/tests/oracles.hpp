#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms; only plain containers and arithmetic.

#include <cmath>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pairs = std::set<std::pair<int, int>>;

inline Pairs compose(const Pairs& a, const Pairs& b) {
  Pairs out;
  for (const auto& [x, z] : a)
    for (const auto& [z2, y] : b)
      if (z == z2) out.insert({x, y});
  return out;
}

inline Pairs diagonal(int n) {
  Pairs d;
  for (int i = 0; i < n; ++i) d.insert({i, i});
  return d;
}

inline Pairs sublevel(const std::vector<std::vector<double>>& rho, double r) {
  Pairs out;
  for (int i = 0; i < static_cast<int>(rho.size()); ++i)
    for (int j = 0; j < static_cast<int>(rho.size()); ++j)
      if (rho[i][j] <= r) out.insert({i, j});
  return out;
}

// Largest tail window sum max_{n >= start} sum_{k=n}^{end} x_k, summed from the
// back in long double.
inline long double tail_sum(const std::vector<double>& xs, std::size_t start) {
  long double s = 0;
  for (std::size_t k = xs.size(); k-- > start;) s += xs[k];
  return s;
}

// Harmonic window H(m) - H(n-1).
inline double harmonic_window(std::size_t n, std::size_t m) {
  long double s = 0;
  for (std::size_t k = n; k <= m; ++k) s += 1.0L / static_cast<long double>(k);
  return static_cast<double>(s);
}

// Power iteration for the dominant eigenvalue of a non-negative matrix.
inline double power_iteration(const std::vector<std::vector<double>>& a, int iters = 2000) {
  const std::size_t n = a.size();
  std::vector<double> v(n, 1.0), w(n);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) w[i] += a[i][j] * v[j];
      norm = std::max(norm, std::fabs(w[i]));
    }
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return lambda;
}

// Gaussian elimination for a small dense system.
inline std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace oracle
