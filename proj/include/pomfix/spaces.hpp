#pragma once

// M-valued distance spaces: axiom audits, triangle and ζ-triangle checks,
// sequence convergence / Cauchy detectors and the Fréchet–Wilson falsifiers.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "pomfix/core.hpp"
#include "pomfix/monoid.hpp"

namespace pomfix {

enum class SpaceKind { dislocated, distance, pseudo };

std::string to_string(SpaceKind k);

template <class X, class M>
struct DistanceSpace {
  std::string description;
  std::function<M(const X&, const X&)> distance;
  SpaceKind kind = SpaceKind::distance;
  Monoid<M> monoid;
  Ladder<M> ladder;
  std::function<std::string(const X&)> point_repr;
  /// Catalog declarations for the ordered drivers (not decidable from d).
  bool regular = false;
  bool co_regular = false;

  M operator()(const X& x, const X& y) const { return distance(x, y); }
  std::string show(const X& x) const { return point_repr ? point_repr(x) : std::string("<point>"); }
  bool below_bottom(const M& m) const { return monoid.strictly_below(m, ladder.bottom()); }
};

template <class X>
using Triple = std::array<X, 3>;

template <class X>
std::vector<Triple<X>> all_triples(const std::vector<X>& points) {
  std::vector<Triple<X>> out;
  out.reserve(points.size() * points.size() * points.size());
  for (const auto& a : points)
    for (const auto& b : points)
      for (const auto& c : points) out.push_back({a, b, c});
  return out;
}

template <class X>
std::vector<Triple<X>> random_triples(const std::vector<X>& points, std::size_t count, Rng& rng) {
  if (points.empty()) throw PreconditionError("random_triples: no points");
  std::vector<Triple<X>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({points[rng.index(points.size())], points[rng.index(points.size())],
                   points[rng.index(points.size())]});
  }
  return out;
}

/// Audits symmetry, range in M₊ and the axioms of the declared kind on random
/// pairs drawn from `samples` (a quarter of them diagonal).
template <class X, class M>
ValidationReport validate_space(const DistanceSpace<X, M>& space, const std::vector<X>& samples, std::size_t trials,
                                Rng& rng) {
  if (samples.empty()) throw PreconditionError("validate_space: samples must be non-empty");
  const auto& mon = space.monoid;
  ValidationReport report;
  auto& sym = report.add("symmetry");
  auto& range = report.add("range-in-M+");
  AxiomResult* separation = space.kind == SpaceKind::pseudo ? nullptr : &report.add("theta-implies-equal");
  AxiomResult* refl = space.kind == SpaceKind::dislocated ? nullptr : &report.add("equal-implies-theta");
  std::size_t dislocations = 0;

  for (std::size_t t = 0; t < trials; ++t) {
    const X& x = samples[rng.index(samples.size())];
    const X& y = rng.coin(0.25) ? x : samples[rng.index(samples.size())];
    const M dxy = space.distance(x, y);
    const M dyx = space.distance(y, x);
    ++sym.trials;
    if (sym.passed && !(dxy == dyx) && !mon.same(dxy, dyx)) {
      sym.passed = false;
      sym.counterexample = fmt::format("d({}, {}) = {} but d({}, {}) = {}", space.show(x), space.show(y),
                                       mon.show(dxy), space.show(y), space.show(x), mon.show(dyx));
    }
    ++range.trials;
    if (range.passed && !mon.positive(dxy)) {
      range.passed = false;
      range.counterexample = fmt::format("d({}, {}) = {}", space.show(x), space.show(y), mon.show(dxy));
    }
    const bool equal = x == y;
    const bool zero = mon.is_identity(dxy);
    if (separation != nullptr) {
      ++separation->trials;
      if (separation->passed && zero && !equal) {
        separation->passed = false;
        separation->counterexample = fmt::format("d({}, {}) = theta for distinct points", space.show(x), space.show(y));
      }
    }
    if (refl != nullptr) {
      ++refl->trials;
      if (refl->passed && equal && !zero) {
        refl->passed = false;
        refl->counterexample = fmt::format("d({}, {}) = {} != theta", space.show(x), space.show(x), mon.show(dxy));
      }
    }
    if (space.kind == SpaceKind::dislocated && equal && !zero) ++dislocations;
  }
  if (space.kind == SpaceKind::dislocated) {
    separation->note = fmt::format("{} sampled self-distances differ from theta (expected dislocation)", dislocations);
  }
  return report;
}

/// d(x,y) ≤ d(x,z) + d(z,y) on each triple (x, y, z).
template <class X, class M>
ValidationReport check_triangle(const DistanceSpace<X, M>& space, const std::vector<Triple<X>>& triples) {
  ValidationReport report;
  auto& tri = report.add("triangle");
  const auto& mon = space.monoid;
  for (const auto& [x, y, z] : triples) {
    ++tri.trials;
    const M lhs = space.distance(x, y);
    const M rhs = mon.combine(space.distance(x, z), space.distance(z, y));
    if (!mon.leq(lhs, rhs)) {
      tri.passed = false;
      tri.counterexample = fmt::format("x={} y={} z={}: d(x,y) = {} not <= d(x,z)+d(z,y) = {}", space.show(x),
                                       space.show(y), space.show(z), mon.show(lhs), mon.show(rhs));
      break;
    }
  }
  return report;
}

/// The (φ, ζ) pair of a generalized triangle φ(d(x,y)) ≤ ζ(d(x,z), d(z,y)).
template <class M>
struct ZetaSpec {
  std::function<M(const M&)> phi;
  std::function<M(const M&, const M&)> zeta;
  /// φ and ζ are only defined away from θ; triples touching θ are skipped.
  bool domain_excludes_zero = false;
};

template <class M>
ZetaSpec<M> plain_triangle_zeta(const Monoid<M>& monoid) {
  return ZetaSpec<M>{[](const M& a) { return a; }, monoid.combine, false};
}

template <class X, class M>
ValidationReport check_zeta_triangle(const DistanceSpace<X, M>& space, const ZetaSpec<M>& zs,
                                     const std::vector<Triple<X>>& triples) {
  ValidationReport report;
  auto& tri = report.add("zeta-triangle");
  const auto& mon = space.monoid;
  std::size_t skipped = 0;
  for (const auto& [x, y, z] : triples) {
    const M dxy = space.distance(x, y);
    const M dxz = space.distance(x, z);
    const M dzy = space.distance(z, y);
    if (zs.domain_excludes_zero && (mon.is_identity(dxy) || mon.is_identity(dxz) || mon.is_identity(dzy))) {
      ++skipped;
      continue;
    }
    ++tri.trials;
    const M lhs = zs.phi(dxy);
    const M rhs = zs.zeta(dxz, dzy);
    if (!mon.leq(lhs, rhs)) {
      tri.passed = false;
      tri.counterexample = fmt::format("x={} y={} z={}: phi(d(x,y)) = {} not <= zeta = {}", space.show(x),
                                       space.show(y), space.show(z), mon.show(lhs), mon.show(rhs));
      break;
    }
  }
  tri.note = fmt::format("{} triples skipped (theta distance)", skipped);
  return report;
}

/// Checks that φ reflects null traces and ζ maps pairs of null traces to null
/// traces, on a fixed battery of traces.
template <class M>
ValidationReport check_zeta_properties(const ZetaSpec<M>& zs, const Monoid<M>& monoid, const Ladder<M>& ladder,
                                       const std::vector<MTrace<M>>& battery) {
  ValidationReport report;
  auto& phi_ok = report.add("phi-reflects-null");
  auto& zeta_ok = report.add("zeta-preserves-null");
  auto mapped = [](const MTrace<M>& t, auto&& fn) {
    MTrace<M> out;
    out.budget = t.budget;
    for (const auto& e : t.elements) out.elements.push_back(fn(e));
    return out;
  };
  std::vector<bool> null(battery.size());
  for (std::size_t i = 0; i < battery.size(); ++i) {
    null[i] = is_null_trace(battery[i], ladder, monoid).decision == Decision::holds;
    ++phi_ok.trials;
    const auto image = mapped(battery[i], zs.phi);
    const bool image_null = is_null_trace(image, ladder, monoid).decision == Decision::holds;
    if (phi_ok.passed && image_null && !null[i]) {
      phi_ok.passed = false;
      phi_ok.counterexample = fmt::format("battery trace {}: phi-image null but trace not null", i);
    }
  }
  for (std::size_t i = 0; i < battery.size(); ++i) {
    for (std::size_t j = 0; j < battery.size(); ++j) {
      if (!null[i] || !null[j]) continue;
      const std::size_t len = std::min(battery[i].size(), battery[j].size());
      MTrace<M> combined;
      combined.budget = std::min(battery[i].budget, battery[j].budget);
      for (std::size_t n = 0; n < len; ++n) {
        combined.elements.push_back(zs.zeta(battery[i].elements[n], battery[j].elements[n]));
      }
      ++zeta_ok.trials;
      if (zeta_ok.passed && is_null_trace(combined, ladder, monoid).decision != Decision::holds) {
        zeta_ok.passed = false;
        zeta_ok.counterexample = fmt::format("battery traces {} and {}: zeta image not null", i, j);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sequences.

template <class X>
struct PointTrace {
  std::vector<X> points;
  std::size_t budget = 0;

  PointTrace() = default;
  explicit PointTrace(std::vector<X> xs) : points(std::move(xs)), budget(points.size()) {}
  PointTrace(std::vector<X> xs, std::size_t b) : points(std::move(xs)), budget(b) {}
};

template <class X, class M>
MTrace<M> consecutive_distances(const DistanceSpace<X, M>& space, const PointTrace<X>& trace) {
  MTrace<M> out;
  // n points give n-1 increments
  out.budget = trace.budget > 0 ? trace.budget - 1 : 0;
  for (std::size_t i = 0; i + 1 < trace.points.size(); ++i) {
    out.elements.push_back(space.distance(trace.points[i], trace.points[i + 1]));
  }
  return out;
}

/// x_n → limit: the trace d(x_n, limit) is null.
template <class X, class M>
TraceVerdict converges_to(const DistanceSpace<X, M>& space, const PointTrace<X>& trace, const X& limit) {
  MTrace<M> d;
  d.budget = trace.budget;
  for (const auto& x : trace.points) d.elements.push_back(space.distance(x, limit));
  return is_null_trace(d, space.ladder, space.monoid);
}

/// Cauchy sequence test: past the settle index every pair n < m of the trace
/// is strictly below the bottom rung.
template <class X, class M>
TraceVerdict is_cauchy_sequence(const DistanceSpace<X, M>& space, const PointTrace<X>& trace) {
  if (trace.points.size() < 2) throw PreconditionError("is_cauchy_sequence: trace needs at least two points");
  const std::size_t n = trace.points.size();
  std::vector<bool> good(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!space.below_bottom(space.distance(trace.points[i], trace.points[j]))) {
        good[i] = false;
        break;
      }
    }
  }
  // The last point has no later partner; it inherits the verdict of the pairs
  // it closes, which are already charged to earlier indices.
  return detail::settle(good, trace.budget);
}

/// CW test: the consecutive-distance series is a Cauchy series.
template <class X, class M>
TraceVerdict is_cw_sequence(const DistanceSpace<X, M>& space, const PointTrace<X>& trace) {
  if (trace.points.size() < 2) throw PreconditionError("is_cw_sequence: trace needs at least two points");
  return cauchy_series_check(consecutive_distances(space, trace), space.ladder, space.monoid);
}

// ---------------------------------------------------------------------------
// Fréchet–Wilson falsifiers.

enum class FwLevel { weak, standard, strong };

std::string to_string(FwLevel level);

/// Finite prefixes of three sequences; for the weak level only zs.front() is
/// used as the fixed point z.
template <class X>
struct FwSequences {
  std::vector<X> xs;
  std::vector<X> ys;
  std::vector<X> zs;
};

template <class X>
struct FwSampler {
  std::function<std::vector<X>(Rng&)> chain;
  std::function<FwSequences<X>(Rng&)> sequences;
};

template <class X>
struct Counterexample {
  std::string property;
  std::uint64_t trial = 0;
  std::vector<X> points;
  std::vector<std::size_t> rung_indices;
  std::vector<std::pair<std::string, std::string>> distances;
  std::string record;
};

namespace detail {

template <class X, class M>
std::string counterexample_record(const DistanceSpace<X, M>& space, const Counterexample<X>& ce) {
  std::string out = "counterexample\n";
  out += fmt::format("space: {}\n", space.description);
  out += fmt::format("property: {}\n", ce.property);
  out += fmt::format("trial: {}\n", ce.trial);
  out += "points:";
  for (const auto& p : ce.points) out += " " + space.show(p);
  out += "\nrungs:";
  for (auto r : ce.rung_indices) out += fmt::format(" {}", r);
  out += "\n";
  for (const auto& [k, v] : ce.distances) out += fmt::format("{}: {}\n", k, v);
  return out;
}

template <class X, class M>
std::optional<Counterexample<X>> strong_fw_trial(const DistanceSpace<X, M>& space, const std::vector<X>& chain) {
  const auto& mon = space.monoid;
  const auto& ladder = space.ladder;
  const std::size_t delta_index = ladder.size() - 1;
  M sum = mon.identity;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    sum = mon.combine(sum, space.distance(chain[k - 1], chain[k]));
    if (!mon.strictly_below(sum, ladder.bottom())) break;  // sums only grow
    const M end = space.distance(chain.front(), chain[k]);
    for (std::size_t e = 0; e < ladder.size(); ++e) {
      if (!mon.strictly_below(end, ladder[e])) {
        Counterexample<X> ce;
        ce.property = "strong-frechet-wilson";
        ce.points.assign(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        ce.rung_indices = {e, delta_index};
        ce.distances = {{"chain_sum", mon.show(sum)},
                        {"delta", mon.show(ladder.bottom())},
                        {"endpoint_distance", mon.show(end)},
                        {"epsilon", mon.show(ladder[e])}};
        return ce;
      }
    }
  }
  return std::nullopt;
}

template <class X, class M>
std::optional<Counterexample<X>> sequence_fw_trial(const DistanceSpace<X, M>& space, FwLevel level,
                                                   const FwSequences<X>& s) {
  const std::size_t n = std::min(s.xs.size(), s.ys.size());
  if (n == 0 || s.zs.empty()) return std::nullopt;
  auto z_at = [&](std::size_t i) -> const X& { return level == FwLevel::weak ? s.zs.front() : s.zs[std::min(i, s.zs.size() - 1)]; };
  MTrace<M> a, b, c;
  for (std::size_t i = 0; i < n; ++i) {
    if (level == FwLevel::weak) {
      a.elements.push_back(space.distance(s.xs[i], s.ys[i]));
      b.elements.push_back(space.distance(s.ys[i], z_at(i)));
      c.elements.push_back(space.distance(s.xs[i], z_at(i)));
    } else {
      a.elements.push_back(space.distance(s.xs[i], z_at(i)));
      b.elements.push_back(space.distance(z_at(i), s.ys[i]));
      c.elements.push_back(space.distance(s.xs[i], s.ys[i]));
    }
  }
  a.budget = b.budget = c.budget = n;
  const auto va = is_null_trace(a, space.ladder, space.monoid);
  const auto vb = is_null_trace(b, space.ladder, space.monoid);
  if (va.decision != Decision::holds || vb.decision != Decision::holds) return std::nullopt;
  // Premises at the bottom rung, conclusion one rung up: the finite ladder
  // cannot see the conclusion's own δ, only the ε it halves into.
  const auto& ladder = space.ladder;
  const auto conclusion_ladder = ladder.size() > 1 ? ladder.truncated(ladder.size() - 2, space.monoid) : ladder;
  const auto vc = is_null_trace(c, conclusion_ladder, space.monoid);
  if (vc.decision != Decision::fails_within) return std::nullopt;
  Counterexample<X> ce;
  ce.property = level == FwLevel::weak ? "weak-frechet-wilson" : "frechet-wilson";
  const std::size_t at = vc.last_violation.value_or(n - 1);
  ce.points = {s.xs[at], s.ys[at], z_at(at)};
  ce.rung_indices = {space.ladder.size() - 1, conclusion_ladder.size() - 1};
  ce.distances = {{"premise_1_last", space.monoid.show(a.elements.back())},
                  {"premise_2_last", space.monoid.show(b.elements.back())},
                  {"conclusion_at_violation", space.monoid.show(c.elements[at])},
                  {"violation_index", std::to_string(at)}};
  return ce;
}

}  // namespace detail

/// Searches for a violation of the Fréchet–Wilson property of the given
/// level. One-sided: a returned counterexample is a genuine violation of the
/// finite-ladder form, while `nullopt` only means "not falsified".
///
/// Trial t draws from Rng(seed).split(t), so the result does not depend on
/// how trials are spread over worker threads; the lowest falsifying trial
/// index wins.
template <class X, class M>
std::optional<Counterexample<X>> falsify_frechet_wilson(const DistanceSpace<X, M>& space, FwLevel level,
                                                        const FwSampler<X>& sampler, std::size_t trials,
                                                        std::uint64_t seed, unsigned workers = 0) {
  if (level == FwLevel::strong && !sampler.chain) throw PreconditionError("falsifier: sampler has no chain generator");
  if (level != FwLevel::strong && !sampler.sequences)
    throw PreconditionError("falsifier: sampler has no sequence generator");
  if (workers == 0) workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  const Rng base(seed);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};

  auto run_worker = [&](unsigned w) -> std::optional<Counterexample<X>> {
    for (std::uint64_t t = w; t < trials; t += workers) {
      if (t > best.load(std::memory_order_relaxed)) break;
      Rng rng = base.split(t);
      std::optional<Counterexample<X>> ce;
      if (level == FwLevel::strong) {
        ce = detail::strong_fw_trial(space, sampler.chain(rng));
      } else {
        ce = detail::sequence_fw_trial(space, level, sampler.sequences(rng));
      }
      if (ce) {
        ce->trial = t;
        std::uint64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
        return ce;
      }
    }
    return std::nullopt;
  };

  std::vector<std::future<std::optional<Counterexample<X>>>> futures;
  for (unsigned w = 1; w < workers; ++w) futures.push_back(std::async(std::launch::async, run_worker, w));
  std::optional<Counterexample<X>> found = run_worker(0);
  for (auto& f : futures) {
    auto ce = f.get();
    if (ce && (!found || ce->trial < found->trial)) found = std::move(ce);
  }
  if (found) found->record = detail::counterexample_record(space, *found);
  return found;
}

// ---------------------------------------------------------------------------
// Products and gauges.

enum class ProductMode { sigma, vee };

namespace detail {

inline SpaceKind weakest_kind(const std::vector<SpaceKind>& kinds) {
  bool pseudo = false;
  bool dislocated = false;
  for (auto k : kinds) {
    pseudo |= k == SpaceKind::pseudo;
    dislocated |= k == SpaceKind::dislocated;
  }
  if (pseudo && dislocated) throw PreconditionError("product of pseudo and dislocated factors has no common kind");
  if (pseudo) return SpaceKind::pseudo;
  if (dislocated) return SpaceKind::dislocated;
  return SpaceKind::distance;
}

template <class X>
std::string show_tuple(const std::vector<X>& xs, const std::vector<std::function<std::string(const X&)>>& reprs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + (reprs[i] ? reprs[i](xs[i]) : "?");
  return s + ")";
}

}  // namespace detail

/// X^m with the summed (σ) or supremum (∨) distance in the shared monoid.
template <class X, class M>
DistanceSpace<std::vector<X>, M> product_space(const std::vector<DistanceSpace<X, M>>& factors, ProductMode mode) {
  if (factors.empty()) throw PreconditionError("product_space: no factors");
  const auto& mon = factors.front().monoid;
  std::vector<SpaceKind> kinds;
  std::vector<std::function<std::string(const X&)>> reprs;
  std::string name = mode == ProductMode::sigma ? "product{sigma" : "product{vee";
  for (const auto& f : factors) {
    if (f.monoid.carrier != mon.carrier) throw PreconditionError("product_space: factors use different monoids");
    kinds.push_back(f.kind);
    reprs.push_back(f.point_repr);
    name += "," + f.description;
  }
  if (mode == ProductMode::vee && !mon.has_sup())
    throw PreconditionError("product_space: vee mode needs the Riesz property");
  std::vector<std::function<M(const X&, const X&)>> ds;
  for (const auto& f : factors) ds.push_back(f.distance);
  auto distance = [ds, mon, mode](const std::vector<X>& x, const std::vector<X>& y) {
    M acc = ds[0](x[0], y[0]);
    for (std::size_t i = 1; i < ds.size(); ++i) {
      acc = mode == ProductMode::sigma ? mon.combine(acc, ds[i](x[i], y[i])) : mon.sup(acc, ds[i](x[i], y[i]));
    }
    return acc;
  };
  return DistanceSpace<std::vector<X>, M>{
      name + "}",
      distance,
      detail::weakest_kind(kinds),
      mon,
      factors.front().ladder,
      [reprs](const std::vector<X>& x) { return detail::show_tuple(x, reprs); },
      std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.regular; }),
      std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.co_regular; })};
}

/// X^m with the M^m-valued distance (d(x_1,y_1), …, d(x_m,y_m)) and the
/// diagonal product ladder.
template <class X, class M>
DistanceSpace<std::vector<X>, std::vector<M>> coordinatewise_product(const std::vector<DistanceSpace<X, M>>& factors) {
  if (factors.empty()) throw PreconditionError("coordinatewise_product: no factors");
  std::vector<Monoid<M>> mons;
  std::vector<Ladder<M>> ladders;
  std::vector<SpaceKind> kinds;
  std::vector<std::function<M(const X&, const X&)>> ds;
  std::vector<std::function<std::string(const X&)>> reprs;
  std::string name = "product{coordinatewise";
  for (const auto& f : factors) {
    mons.push_back(f.monoid);
    ladders.push_back(f.ladder);
    kinds.push_back(f.kind);
    ds.push_back(f.distance);
    reprs.push_back(f.point_repr);
    name += "," + f.description;
  }
  auto mon = product_monoid(mons);
  auto ladder = product_ladder(ladders, mon);
  auto distance = [ds](const std::vector<X>& x, const std::vector<X>& y) {
    std::vector<M> out;
    out.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) out.push_back(ds[i](x[i], y[i]));
    return out;
  };
  return DistanceSpace<std::vector<X>, std::vector<M>>{
      name + "}",
      distance,
      detail::weakest_kind(kinds),
      mon,
      ladder,
      [reprs](const std::vector<X>& x) { return detail::show_tuple(x, reprs); },
      std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.regular; }),
      std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.co_regular; })};
}

/// Generalized gauge space: a family of pseudo-distances on one carrier packed
/// into a product-monoid-valued distance. The kind is `distance` when the
/// family separates every sampled pair of distinct points, else `pseudo`.
template <class X, class M>
DistanceSpace<X, std::vector<M>> gauge_space(const std::vector<DistanceSpace<X, M>>& family,
                                             const std::vector<X>& samples) {
  if (family.empty()) throw PreconditionError("gauge_space: empty family");
  std::vector<Monoid<M>> mons;
  std::vector<Ladder<M>> ladders;
  std::vector<std::function<M(const X&, const X&)>> ds;
  std::string name = "gauge{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    mons.push_back(family[i].monoid);
    ladders.push_back(family[i].ladder);
    ds.push_back(family[i].distance);
    name += (i ? "," : "") + family[i].description;
  }
  auto mon = product_monoid(mons);
  auto ladder = product_ladder(ladders, mon);
  auto distance = [ds](const X& x, const X& y) {
    std::vector<M> out;
    out.reserve(ds.size());
    for (const auto& d : ds) out.push_back(d(x, y));
    return out;
  };
  bool separating = true;
  for (std::size_t i = 0; i < samples.size() && separating; ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[i] == samples[j]) continue;
      if (mon.is_identity(distance(samples[i], samples[j]))) {
        separating = false;
        break;
      }
    }
  }
  return DistanceSpace<X, std::vector<M>>{
      name + "}",
      distance,
      separating ? SpaceKind::distance : SpaceKind::pseudo,
      mon,
      ladder,
      family.front().point_repr,
      std::all_of(family.begin(), family.end(), [](const auto& f) { return f.regular; }),
      std::all_of(family.begin(), family.end(), [](const auto& f) { return f.co_regular; })};
}

}  // namespace pomfix
