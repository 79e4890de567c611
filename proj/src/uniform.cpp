#include "pomfix/uniform.hpp"

#include <cmath>

#include <fmt/format.h>

namespace pomfix {

Relation entourage_distance(const std::vector<Relation>& base, std::size_t x, std::size_t y) {
  if (base.empty()) throw PreconditionError("entourage_distance: empty base");
  const std::size_t n = base.front().points();
  if (x >= n || y >= n) throw PreconditionError("entourage_distance: point out of range");
  Relation acc = Relation::full(n);
  for (const auto& e : base) {
    if (e.points() != n) throw PreconditionError("entourage_distance: base relations on different point sets");
    if (e.contains(x, y)) acc = acc.intersect(e);
  }
  return acc;
}

UniformSpace make_uniform_from_pseudometric(const std::vector<std::vector<double>>& rho,
                                            const std::vector<double>& thresholds) {
  const std::size_t n = rho.size();
  if (n == 0) throw PreconditionError("make_uniform_from_pseudometric: no points");
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i].size() != n) throw PreconditionError("make_uniform_from_pseudometric: rho is not square");
    if (rho[i][i] != 0.0) throw PreconditionError(fmt::format("make_uniform_from_pseudometric: rho({0},{0}) != 0", i));
    for (std::size_t j = 0; j < n; ++j) {
      if (rho[i][j] != rho[j][i] || rho[i][j] < 0.0)
        throw PreconditionError(fmt::format("make_uniform_from_pseudometric: rho not symmetric at ({}, {})", i, j));
    }
  }
  if (thresholds.empty()) throw PreconditionError("make_uniform_from_pseudometric: no thresholds");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!(thresholds[k] > 0.0)) throw PreconditionError("make_uniform_from_pseudometric: thresholds must be positive");
    if (k > 0 && !(thresholds[k] <= 0.5 * thresholds[k - 1])) {
      throw PreconditionError(fmt::format(
          "make_uniform_from_pseudometric: threshold {} = {} is not at most half of {}", k, thresholds[k],
          thresholds[k - 1]));
    }
  }

  // Sublevels equal to the diagonal or to the previous kept sublevel are
  // dropped: rungs must be positive and strictly descending.
  std::vector<Relation> base;
  std::vector<double> kept;
  for (double r : thresholds) {
    Relation e(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rho[i][j] <= r) e.insert(i, j);
    // a Δ first rung is kept so degenerate carriers still build; the ladder
    // audit reports it
    if (!base.empty() && e == Relation::diagonal(n)) break;
    if (!base.empty() && e == base.back()) {
      kept.back() = r;
      continue;
    }
    base.push_back(std::move(e));
    kept.push_back(r);
  }
  bool separating = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rho[i][j] == 0.0) separating = false;

  auto monoid = relation_monoid(n);
  Ladder<Relation> ladder(base, monoid);
  auto distance = [base, n](const std::size_t& x, const std::size_t& y) {
    if (x == y) return Relation::diagonal(n);
    return entourage_distance(base, x, y);
  };
  DistanceSpace<std::size_t, Relation> space{
      fmt::format("uniform_pseudometric{{{}}}", n),
      distance,
      separating ? SpaceKind::distance : SpaceKind::pseudo,
      monoid,
      ladder,
      [](const std::size_t& x) { return fmt::format("p{}", x); },
      false,
      false};
  return UniformSpace{std::move(space), std::move(base), std::move(kept)};
}

std::vector<std::vector<double>> euclidean_matrix(const std::vector<std::array<double, 2>>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> rho(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(points[i][0] - points[j][0], points[i][1] - points[j][1]);
      rho[i][j] = rho[j][i] = d;
    }
  return rho;
}

std::vector<std::array<double, 2>> random_unit_square(std::size_t n, Rng& rng) {
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
  return pts;
}

}  // namespace pomfix
