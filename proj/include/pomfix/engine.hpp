#pragma once

// Picard iteration and the four hypothesis-auditing fixed-point drivers:
// Meir–Keeler, Caristi, sequential (orbit-bounded / series) and monotone.
// Every driver audits what is checkable along the computed orbit plus finite
// pair samples, then certifies the limit by its residual d(x̄, f(x̄)).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "pomfix/core.hpp"
#include "pomfix/monoid.hpp"
#include "pomfix/spaces.hpp"

namespace pomfix {

template <class X>
struct MapSpec {
  std::function<X(const X&)> apply;
  /// Order on X for the monotone driver; empty when X is unordered.
  std::function<bool(const X&, const X&)> order_leq;
  /// Binary supremum on X, used only by the monotone uniqueness probe.
  std::function<X(const X&, const X&)> point_sup;
  std::string description;
};

struct StepFlag {
  std::string check;
  bool passed = true;
};

template <class X, class M>
struct IterationTrace {
  std::vector<X> points;
  MTrace<M> consec;
  /// flags[k] belongs to the step x_k → x_{k+1}.
  std::vector<std::vector<StepFlag>> flags;
  bool stopped_early = false;
};

enum class SolveStatus { certified, hypothesis_violated, budget_exhausted };

std::string to_string(SolveStatus s);

struct Violation {
  std::size_t step = 0;
  std::string which;
  std::string witness;
};

template <class X, class M>
struct SolveReport {
  std::string driver;
  SolveStatus status = SolveStatus::budget_exhausted;
  std::optional<X> fixed_point;
  std::optional<M> residual;
  std::size_t iterations = 0;
  std::optional<Violation> violation;
  std::vector<std::string> diagnostics;
  IterationTrace<X, M> trace;

  bool certified() const { return status == SolveStatus::certified; }
};

struct SolveOptions {
  std::size_t budget = 1000;
  /// Stop after this many consecutive steps strictly below the bottom rung.
  std::size_t confirm_window = 3;
};

/// The sequence λ_1, λ_2, … of non-decreasing operators on M₊ (n ≥ 1).
template <class M>
struct LambdaSequence {
  std::function<M(std::size_t n, const M&)> apply;
  /// All λ_n equal; lets the product trace be built incrementally.
  bool stationary = false;
  std::string description;
};

template <class M>
LambdaSequence<M> constant_lambda(std::function<M(const M&)> op, std::string description = "constant") {
  return LambdaSequence<M>{[op](std::size_t, const M& t) { return op(t); }, true, std::move(description)};
}

/// ((λ_1 ∘ λ_2 ∘ … ∘ λ_n)(α))_{n=1..n_max}; λ_1 is applied last.
///
/// In general each term is recomputed from α (O(n_max²) applications); for a
/// stationary sequence the composition order is immaterial and the trace is
/// built by one application per term.
template <class M>
MTrace<M> lambda_product_trace(const LambdaSequence<M>& lam, const M& alpha, std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("lambda_product_trace: n_max must be at least 1");
  MTrace<M> out;
  out.budget = n_max;
  out.elements.reserve(n_max);
  if (lam.stationary) {
    M v = alpha;
    for (std::size_t n = 1; n <= n_max; ++n) {
      v = lam.apply(n, v);
      out.elements.push_back(v);
    }
    return out;
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    M v = alpha;
    for (std::size_t i = n; i >= 1; --i) v = lam.apply(i, v);
    out.elements.push_back(std::move(v));
  }
  return out;
}

/// d(candidate, f(candidate)) and whether it is strictly below the bottom
/// rung.
template <class X, class M>
std::pair<M, bool> verify_fixed_point(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const X& candidate) {
  const M r = space.distance(candidate, f.apply(candidate));
  return {r, space.below_bottom(r)};
}

namespace detail {

/// Called after x_{k+1} has been appended; returns the violated check and a
/// witness, or nullopt.
template <class X, class M>
using StepAudit = std::function<std::optional<Violation>(std::size_t k, IterationTrace<X, M>& trace)>;

template <class X, class M>
IterationTrace<X, M> orbit(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const X& x0,
                           const SolveOptions& opt, const StepAudit<X, M>& audit, std::optional<Violation>& violation) {
  if (opt.budget == 0) throw PreconditionError("picard_iterate: budget must be at least 1");
  IterationTrace<X, M> tr;
  tr.consec.budget = opt.budget;
  tr.points.push_back(x0);
  std::size_t quiet = 0;
  for (std::size_t k = 0; k < opt.budget; ++k) {
    X next = f.apply(tr.points.back());
    const M d = space.distance(tr.points.back(), next);
    const bool repeat = next == tr.points.back();
    tr.points.push_back(std::move(next));
    tr.consec.elements.push_back(d);
    tr.flags.emplace_back();
    if (audit) {
      violation = audit(k, tr);
      if (violation) return tr;
    }
    quiet = space.below_bottom(d) ? quiet + 1 : 0;
    if (repeat || quiet >= opt.confirm_window) {
      tr.stopped_early = true;
      break;
    }
  }
  return tr;
}

template <class X, class M>
void flag(IterationTrace<X, M>& tr, std::size_t k, std::string check, bool passed) {
  tr.flags[k].push_back(StepFlag{std::move(check), passed});
}

/// Fills status, fixed point and residual from a finished orbit.
template <class X, class M>
void certify(SolveReport<X, M>& rep, const DistanceSpace<X, M>& space, const MapSpec<X>& f) {
  const X& last = rep.trace.points.back();
  auto [r, ok] = verify_fixed_point(space, f, last);
  rep.fixed_point = last;
  rep.residual = r;
  rep.iterations = rep.trace.points.size() - 1;
  if (ok) {
    rep.status = SolveStatus::certified;
  } else {
    rep.status = SolveStatus::budget_exhausted;
    rep.diagnostics.push_back(
        fmt::format("residual {} not strictly below bottom rung {}", space.monoid.show(r),
                    space.monoid.show(space.ladder.bottom())));
  }
}

/// A seed with f(x0) = x0 is certified without iterating, provided its
/// residual is below the bottom rung (a dislocated space may refuse it).
template <class X, class M>
bool degenerate_seed(SolveReport<X, M>& rep, const DistanceSpace<X, M>& space, const MapSpec<X>& f, const X& x0) {
  if (!(f.apply(x0) == x0)) return false;
  rep.trace.points = {x0};
  auto [r, ok] = verify_fixed_point(space, f, x0);
  rep.fixed_point = x0;
  rep.residual = r;
  rep.iterations = 0;
  rep.status = ok ? SolveStatus::certified : SolveStatus::budget_exhausted;
  rep.diagnostics.push_back(ok ? "seed is an exact fixed point"
                               : fmt::format("seed is an exact fixed point but its residual {} is not below the "
                                             "bottom rung (dislocation)",
                                             space.monoid.show(r)));
  return true;
}

template <class X, class M>
void fail(SolveReport<X, M>& rep, Violation v) {
  rep.status = SolveStatus::hypothesis_violated;
  rep.iterations = rep.trace.points.empty() ? 0 : rep.trace.points.size() - 1;
  rep.violation = std::move(v);
}

}  // namespace detail

/// Plain Picard iteration x_{k+1} = f(x_k), stopping early after
/// `confirm_window` consecutive steps below the bottom rung or on an exact
/// repeat.
template <class X, class M>
IterationTrace<X, M> picard_iterate(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const X& x0,
                                    const SolveOptions& opt = {}) {
  std::optional<Violation> none;
  return detail::orbit<X, M>(space, f, x0, opt, {}, none);
}

// ---------------------------------------------------------------------------
// Meir–Keeler.

template <class X, class M>
struct MeirKeelerData {
  /// ε ↦ δ; may return a non-rung element such as ε/2.
  std::function<M(const M&)> delta_of;
  std::function<M(const M&, const M&)> zeta;
  /// Optional midpoint oracle for the uniqueness diagnostics: given x, y, α, β
  /// with d(x,y) < α + β, a z with d(x,z) < α and d(z,y) < β.
  std::function<std::optional<X>(const X&, const X&, const M&, const M&)> midpoint;
};

template <class X, class M>
SolveReport<X, M> solve_meir_keeler(const DistanceSpace<X, M>& space, const MapSpec<X>& f,
                                    const MeirKeelerData<X, M>& mk, const X& x0,
                                    const std::vector<std::pair<X, X>>& sample_pairs, const SolveOptions& opt = {}) {
  SolveReport<X, M> rep;
  rep.driver = "meir-keeler";
  const auto& mon = space.monoid;
  const auto& rungs = space.ladder.rungs();

  // ζ data on the rungs: ζ(ε,δ) ≥ ε, ζ(ε,δ) ≥ δ, coordinatewise monotone.
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    for (std::size_t j = 0; j < rungs.size(); ++j) {
      const M z = mk.zeta(rungs[i], rungs[j]);
      if (!mon.leq(rungs[i], z) || !mon.leq(rungs[j], z)) {
        detail::fail(rep, Violation{0, "zeta-dominates-rungs",
                                    fmt::format("zeta({}, {}) = {}", mon.show(rungs[i]), mon.show(rungs[j]), mon.show(z))});
        return rep;
      }
      if (i + 1 < rungs.size() && !mon.leq(mk.zeta(rungs[i + 1], rungs[j]), z)) {
        detail::fail(rep, Violation{0, "zeta-monotone",
                                    fmt::format("zeta decreases from rung {} to rung {}", i + 1, i)});
        return rep;
      }
    }
  }

  // The ζ-triangle on triples drawn from the sample points.
  std::vector<X> pts;
  for (const auto& [a, b] : sample_pairs) {
    pts.push_back(a);
    pts.push_back(b);
  }
  if (!pts.empty()) {
    Rng rng(splitmix64(pts.size()));
    const auto triples = pts.size() <= 16 ? all_triples(pts) : random_triples(pts, 4096, rng);
    const auto zr = check_zeta_triangle(space, ZetaSpec<M>{[](const M& a) { return a; }, mk.zeta, false}, triples);
    if (!zr.passed()) {
      detail::fail(rep, Violation{0, "zeta-triangle", zr.entries.front().counterexample});
      return rep;
    }
  }

  // d(x,y) ≤ ζ(δ, ε) ⇒ d(f(x), f(y)) < ε, for every rung and sampled pair.
  for (std::size_t i = 0; i < rungs.size(); ++i) {
    const M& eps = rungs[i];
    const M bound = mk.zeta(mk.delta_of(eps), eps);
    for (const auto& [x, y] : sample_pairs) {
      const M d = space.distance(x, y);
      if (!mon.leq(d, bound)) continue;
      const M df = space.distance(f.apply(x), f.apply(y));
      if (!mon.strictly_below(df, eps)) {
        detail::fail(rep, Violation{0, "meir-keeler-condition",
                                    fmt::format("x={} y={} rung {}: d(x,y) = {} <= {} but d(fx,fy) = {} not < {}",
                                                space.show(x), space.show(y), i, mon.show(d), mon.show(bound),
                                                mon.show(df), mon.show(eps))});
        return rep;
      }
    }
  }
  rep.diagnostics.push_back(fmt::format("condition checked on {} sampled pairs x {} rungs (sampled hypotheses)",
                                        sample_pairs.size(), rungs.size()));

  if (detail::degenerate_seed(rep, space, f, x0)) return rep;
  std::optional<Violation> v;
  rep.trace = detail::orbit<X, M>(space, f, x0, opt, {}, v);
  detail::certify(rep, space, f);

  if (mk.midpoint && rep.fixed_point) {
    // Uniqueness probe: split each sampled pair at the bottom rung.
    std::size_t split = 0;
    for (const auto& [x, y] : sample_pairs) {
      if (mk.midpoint(x, y, space.ladder.bottom(), space.distance(x, y))) ++split;
    }
    rep.diagnostics.push_back(fmt::format("midpoint oracle produced {} of {} splits", split, sample_pairs.size()));
  } else {
    rep.diagnostics.push_back("no midpoint oracle: uniqueness not probed");
  }
  if (rep.fixed_point && !sample_pairs.empty()) {
    // d(x,y) < n·ε for the bottom rung, by repeated addition (capped).
    constexpr std::size_t cap = 1024;
    std::size_t worst = 0;
    std::size_t unreached = 0;
    for (const auto& [x, y] : sample_pairs) {
      const M d = space.distance(x, y);
      M acc = space.ladder.bottom();
      std::size_t n = 1;
      while (n <= cap && !mon.strictly_below(d, acc)) {
        acc = mon.combine(acc, space.ladder.bottom());
        ++n;
      }
      if (n > cap) ++unreached;
      else worst = std::max(worst, n);
    }
    rep.diagnostics.push_back(fmt::format("archimedean probe: sampled pairs need n <= {} bottom rungs; {} not reached by {}",
                                          worst, unreached, cap));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Caristi.

template <class X, class M>
struct CaristiData {
  std::function<M(const X&)> potential;
  std::function<M(const M&)> eta;
};

template <class X, class M>
SolveReport<X, M> solve_caristi(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const CaristiData<X, M>& cd,
                                const X& x0, const SolveOptions& opt = {}) {
  const auto& mon = space.monoid;
  if (!mon.weierstrass) {
    throw PreconditionError(fmt::format("solve_caristi: monoid {} is not declared Weierstrass", mon.carrier));
  }
  SolveReport<X, M> rep;
  rep.driver = "caristi";
  if (detail::degenerate_seed(rep, space, f, x0)) return rep;

  const M phi0 = cd.potential(x0);
  M partial = mon.identity;
  detail::StepAudit<X, M> audit = [&](std::size_t k, IterationTrace<X, M>& tr) -> std::optional<Violation> {
    const X& xk = tr.points[k];
    const X& xk1 = tr.points[k + 1];
    const M& dk = tr.consec.elements[k];
    const M lhs = mon.combine(cd.eta(dk), cd.potential(xk1));
    const M rhs = cd.potential(xk);
    const bool step_ok = mon.leq(lhs, rhs);
    detail::flag(tr, k, "caristi", step_ok);
    if (!step_ok) {
      return Violation{k, "caristi-inequality",
                       fmt::format("x={}: eta(d(x,fx)) + phi(fx) = {} not <= phi(x) = {}", space.show(xk),
                                   mon.show(lhs), mon.show(rhs))};
    }
    // η(d_0 + … + d_k) ≤ φ(x_0).
    const M before = partial;
    partial = mon.combine(partial, dk);
    const bool bound_ok = mon.leq(cd.eta(partial), phi0);
    detail::flag(tr, k, "induction-bound", bound_ok);
    if (!bound_ok) {
      return Violation{k, "induction-bound",
                       fmt::format("eta(sum of {} steps) = {} not <= phi(x0) = {}", k + 1, mon.show(cd.eta(partial)),
                                   mon.show(phi0))};
    }
    const bool semi_ok = mon.leq(cd.eta(partial), mon.combine(cd.eta(before), cd.eta(dk)));
    detail::flag(tr, k, "eta-semi-additive", semi_ok);
    if (!semi_ok) {
      return Violation{k, "eta-semi-additive",
                       fmt::format("eta({} + {}) exceeds eta sum", mon.show(before), mon.show(dk))};
    }
    return std::nullopt;
  };
  std::optional<Violation> v;
  rep.trace = detail::orbit<X, M>(space, f, x0, opt, audit, v);
  if (v) {
    detail::fail(rep, *v);
    return rep;
  }
  detail::certify(rep, space, f);
  rep.diagnostics.push_back("caristi inequality and induction bound audited at every step (sampled hypotheses)");
  return rep;
}

// ---------------------------------------------------------------------------
// Sequential contractions.

enum class SequentialMode { orbit_bounded, series };

std::string to_string(SequentialMode m);

template <class X, class M>
struct SequentialOptions {
  SolveOptions solve;
  SequentialMode mode = SequentialMode::series;
  /// Length of the λ-product trace; defaults to the budget.
  std::size_t n_max = 0;
  /// Added to the right side of each step audit to absorb rounding in
  /// floating carriers; empty means exact comparison.
  std::optional<M> step_slack;
  /// Second seed for the uniqueness diagnostics.
  std::optional<X> second_seed;
};

namespace detail {

template <class M>
M with_slack(const Monoid<M>& mon, const M& v, const std::optional<M>& slack) {
  return slack ? mon.combine(v, *slack) : v;
}

template <class X, class M>
void uniqueness_probe(SolveReport<X, M>& rep, const DistanceSpace<X, M>& space, const MapSpec<X>& f,
                      const LambdaSequence<M>& lam, const X& y0, const SolveOptions& opt, std::size_t n_max) {
  const auto& mon = space.monoid;
  const auto other = picard_iterate(space, f, y0, opt);
  std::vector<M> cross;
  const auto& xs = rep.trace.points;
  const auto& ys = other.points;
  const std::size_t stride_x = std::max<std::size_t>(1, xs.size() / 32);
  const std::size_t stride_y = std::max<std::size_t>(1, ys.size() / 32);
  for (std::size_t i = 0; i < xs.size(); i += stride_x)
    for (std::size_t j = 0; j < ys.size(); j += stride_y) cross.push_back(space.distance(xs[i], ys[j]));
  const auto beta = is_bounded(cross, mon);
  if (!beta) {
    rep.diagnostics.push_back("uniqueness probe: cross-orbit distances have no constructible bound");
    return;
  }
  const auto null = is_null_trace(lambda_product_trace(lam, *beta, n_max), space.ladder, mon);
  const M gap = space.distance(xs.back(), ys.back());
  rep.diagnostics.push_back(fmt::format(
      "uniqueness probe from {}: cross-orbit bound {}, product trace {}, limit gap {} ({})", space.show(y0),
      mon.show(*beta), to_string(null.decision), mon.show(gap),
      space.below_bottom(gap) ? "limits agree" : "limits differ"));
}

/// Set I, condition (d), at the natural witnesses: for x = x_n, y = x_m look
/// for x', y' in O_{n-1} with d(x,y) ≤ λ_n(d(x',y')), trying (x_{n-1},
/// x_{m-1}) first and then a short scan of the computed prefix.
template <class X, class M>
bool graduated_contraction_at(const DistanceSpace<X, M>& space, const LambdaSequence<M>& lam,
                              const std::vector<X>& pts, std::size_t n, std::size_t m, const std::optional<M>& slack) {
  const auto& mon = space.monoid;
  const M lhs = space.distance(pts[n], pts[m]);
  auto ok_with = [&](std::size_t a, std::size_t b) {
    return mon.leq(lhs, with_slack(mon, lam.apply(n, space.distance(pts[a], pts[b])), slack));
  };
  if (ok_with(n - 1, m - 1)) return true;
  const std::size_t hi = std::min(pts.size(), n - 1 + 16);
  for (std::size_t a = n - 1; a < hi; ++a)
    for (std::size_t b = a; b < pts.size() && b < a + 16; ++b)
      if (ok_with(a, b)) return true;
  return false;
}

}  // namespace detail

namespace detail {

template <class X, class M>
SolveReport<X, M> sequential_core(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const LambdaSequence<M>& lam,
                                  const X& x0, const SequentialOptions<X, M>& opt, const StepAudit<X, M>& extra,
                                  std::string driver) {
  SolveReport<X, M> rep;
  rep.driver = std::move(driver);
  const auto& mon = space.monoid;
  const std::size_t n_max = opt.n_max ? opt.n_max : opt.solve.budget;
  if (degenerate_seed(rep, space, f, x0)) return rep;

  if (opt.mode == SequentialMode::series) {
    // II(c): the product trace applied to d(x0, f(x0)) is a Cauchy series.
    const M d01 = space.distance(x0, f.apply(x0));
    const auto series = cauchy_series_check(lambda_product_trace(lam, d01, n_max), space.ladder, mon);
    if (series.decision != Decision::holds) {
      rep.status = SolveStatus::budget_exhausted;
      rep.trace.points = {x0};
      rep.diagnostics.push_back(fmt::format(
          "series check {}: window starting at term {} is not below the bottom rung (settle index {} of {})",
          to_string(series.decision), series.last_violation.value_or(0) + 1, series.settle_index, n_max));
      return rep;
    }
    rep.diagnostics.push_back(fmt::format("series check holds, settle index {} of {}", series.settle_index, n_max));
  }

  StepAudit<X, M> audit = [&](std::size_t k, IterationTrace<X, M>& tr) -> std::optional<Violation> {
    if (extra) {
      if (auto v = extra(k, tr)) return v;
    }
    if (k == 0) return std::nullopt;
    if (opt.mode == SequentialMode::series) {
      // II(b): d(x_k, x_{k+1}) ≤ λ_k(d(x_{k-1}, x_k)).
      const M& lhs = tr.consec.elements[k];
      const M rhs = with_slack(mon, lam.apply(k, tr.consec.elements[k - 1]), opt.step_slack);
      const bool ok = mon.leq(lhs, rhs);
      flag(tr, k, "step-contraction", ok);
      if (!ok) {
        return Violation{k, "step-contraction",
                         fmt::format("d(x_{0}, x_{1}) = {2} not <= lambda_{0}(d(x_{3}, x_{0})) = {4}", k, k + 1,
                                     mon.show(lhs), k - 1, mon.show(rhs))};
      }
      return std::nullopt;
    }
    // I(d) sampled at the newest pair (x_k, x_{k+1}).
    const bool ok = graduated_contraction_at(space, lam, tr.points, k, k + 1, opt.step_slack);
    flag(tr, k, "graduated-contraction", ok);
    if (!ok) {
      return Violation{k, "graduated-contraction",
                       fmt::format("no witness pair in O_{} for (x_{}, x_{})", k - 1, k, k + 1)};
    }
    return std::nullopt;
  };
  std::optional<Violation> v;
  rep.trace = orbit<X, M>(space, f, x0, opt.solve, audit, v);
  if (v) {
    fail(rep, *v);
    return rep;
  }

  if (opt.mode == SequentialMode::orbit_bounded) {
    // I(b) on the computed orbit, then I(c) for the bound α.
    const auto& pts = rep.trace.points;
    std::vector<M> pair_d;
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / 64);
    for (std::size_t i = 0; i < pts.size(); i += stride)
      for (std::size_t j = i; j < pts.size(); j += stride) pair_d.push_back(space.distance(pts[i], pts[j]));
    pair_d.push_back(space.distance(pts.front(), pts.back()));
    const auto alpha = is_bounded(pair_d, mon);
    if (!alpha) {
      fail(rep, Violation{0, "orbit-bounded", "no constructible bound for sampled orbit distances"});
      return rep;
    }
    const auto null = is_null_trace(lambda_product_trace(lam, *alpha, n_max), space.ladder, mon);
    if (null.decision != Decision::holds) {
      rep.status = SolveStatus::budget_exhausted;
      rep.iterations = pts.size() - 1;
      rep.diagnostics.push_back(fmt::format("product trace at orbit bound {} is {} (settle index {})",
                                            mon.show(*alpha), to_string(null.decision), null.settle_index));
      return rep;
    }
    rep.diagnostics.push_back(fmt::format("orbit bound {}; product trace null from term {}", mon.show(*alpha),
                                          null.settle_index + 1));
  }
  certify(rep, space, f);
  return rep;
}

}  // namespace detail

template <class X, class M>
SolveReport<X, M> solve_sequential(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const LambdaSequence<M>& lam,
                                   const X& x0, const SequentialOptions<X, M>& opt = {}) {
  auto rep = detail::sequential_core<X, M>(space, f, lam, x0, opt, {},
                                           fmt::format("sequential/{}", to_string(opt.mode)));
  if (opt.second_seed && rep.certified() && rep.iterations > 0) {
    detail::uniqueness_probe(rep, space, f, lam, *opt.second_seed, opt.solve,
                             opt.n_max ? opt.n_max : opt.solve.budget);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Monotone.

template <class X, class M>
SolveReport<X, M> solve_monotone(const DistanceSpace<X, M>& space, const MapSpec<X>& f, const LambdaSequence<M>& lam,
                                 const X& x0, const SequentialOptions<X, M>& opt = {}) {
  if (!f.order_leq) throw PreconditionError("solve_monotone: map carries no order");
  if (!space.regular) {
    throw PreconditionError(
        fmt::format("solve_monotone: convergence in {} is not declared regular", space.description));
  }
  const auto& leq = f.order_leq;
  const std::string driver = fmt::format("monotone/{}", to_string(opt.mode));
  const X fx0 = f.apply(x0);
  if (!leq(x0, fx0)) {
    SolveReport<X, M> rep;
    rep.driver = driver;
    rep.trace.points = {x0};
    detail::fail(rep, Violation{0, "seed-order",
                                fmt::format("x0 = {} is not <= f(x0) = {}", space.show(x0), space.show(fx0))});
    return rep;
  }
  detail::StepAudit<X, M> chain = [&](std::size_t k, IterationTrace<X, M>& tr) -> std::optional<Violation> {
    const bool ok = leq(tr.points[k], tr.points[k + 1]);
    detail::flag(tr, k, "chain-monotone", ok);
    if (ok) return std::nullopt;
    return Violation{k, "chain-monotone",
                     fmt::format("x_{} = {} is not <= x_{} = {}", k, space.show(tr.points[k]), k + 1,
                                 space.show(tr.points[k + 1]))};
  };
  auto rep = detail::sequential_core<X, M>(space, f, lam, x0, opt, chain, driver);
  if (rep.certified() && opt.second_seed) {
    // Comparable-orbit probe: iterate from x̄ ∨ y0 when X has suprema.
    const X& xbar = *rep.fixed_point;
    const X start = f.point_sup ? f.point_sup(xbar, *opt.second_seed) : *opt.second_seed;
    const auto probe = picard_iterate(space, f, start, opt.solve);
    const M gap = space.distance(xbar, probe.points.back());
    rep.diagnostics.push_back(fmt::format("uniqueness probe from {}{}: limit gap {} ({})", space.show(start),
                                          f.point_sup ? " (sup with the fixed point)" : "", space.monoid.show(gap),
                                          space.below_bottom(gap) ? "limits agree" : "limits differ"));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Parametrized families.

template <class W, class X, class M>
struct ParametrizedResult {
  std::vector<W> omegas;
  std::vector<SolveReport<X, M>> reports;
  std::optional<bool> admissible;
};

/// Solves F(ω, ·) for every ω concurrently; a throwing solve is isolated to
/// its own row. `admissible`, when given, sees the assembled table of
/// certified fixed points (nullopt where a row failed).
template <class W, class X, class M>
ParametrizedResult<W, X, M> solve_parametrized(
    const std::function<X(const W&, const X&)>& family, const std::vector<W>& omegas,
    const std::function<SolveReport<X, M>(const W&, const MapSpec<X>&)>& solver,
    const std::function<bool(const std::vector<W>&, const std::vector<std::optional<X>>&)>& admissible = {}) {
  ParametrizedResult<W, X, M> out;
  out.omegas = omegas;
  std::vector<std::future<SolveReport<X, M>>> jobs;
  for (const auto& w : omegas) {
    jobs.push_back(std::async(std::launch::async, [&family, &solver, w]() {
      MapSpec<X> f;
      f.apply = [&family, w](const X& x) { return family(w, x); };
      try {
        return solver(w, f);
      } catch (const std::exception& e) {
        SolveReport<X, M> rep;
        rep.driver = "parametrized";
        rep.status = SolveStatus::hypothesis_violated;
        rep.violation = Violation{0, "solver-error", e.what()};
        return rep;
      }
    }));
  }
  for (auto& j : jobs) out.reports.push_back(j.get());
  if (admissible) {
    std::vector<std::optional<X>> table;
    for (const auto& r : out.reports) table.push_back(r.certified() ? r.fixed_point : std::nullopt);
    out.admissible = admissible(out.omegas, table);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export.

/// index,point,consec,flags. The point and distance fields are quoted.
template <class X, class M>
std::string trace_csv(const DistanceSpace<X, M>& space, const IterationTrace<X, M>& tr) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::string out = "index,point,consec,flags\n";
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    std::string consec;
    std::string flags;
    if (k < tr.consec.elements.size()) consec = space.monoid.show(tr.consec.elements[k]);
    if (k < tr.flags.size()) {
      for (const auto& fl : tr.flags[k]) {
        flags += (flags.empty() ? "" : ";") + fl.check + (fl.passed ? "=ok" : "=FAIL");
      }
    }
    out += fmt::format("{},{},{},{}\n", k, quote(space.show(tr.points[k])), quote(consec), flags);
  }
  return out;
}

template <class X, class M>
std::string report_text(const DistanceSpace<X, M>& space, const SolveReport<X, M>& rep) {
  std::string out;
  out += fmt::format("driver: {}\n", rep.driver);
  out += fmt::format("space: {}\n", space.description);
  out += fmt::format("status: {}{}\n", to_string(rep.status),
                     rep.certified() ? " (sampled hypotheses)" : "");
  out += fmt::format("iterations: {}\n", rep.iterations);
  if (rep.fixed_point) out += fmt::format("fixed_point: {}\n", space.show(*rep.fixed_point));
  if (rep.residual) out += fmt::format("residual: {}\n", space.monoid.show(*rep.residual));
  out += fmt::format("bottom_rung: {}\n", space.monoid.show(space.ladder.bottom()));
  if (rep.violation) {
    out += fmt::format("violation_step: {}\n", rep.violation->step);
    out += fmt::format("violation_check: {}\n", rep.violation->which);
    out += fmt::format("violation_witness: {}\n", rep.violation->witness);
  }
  for (const auto& d : rep.diagnostics) out += fmt::format("diagnostic: {}\n", d);
  return out;
}

}  // namespace pomfix
