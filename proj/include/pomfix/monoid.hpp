#pragma once

// Partially ordered monoids, finite test ladders standing in for the
// threshold family of null sequences, and the finite-horizon null-sequence and
// Cauchy-series deciders built on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "pomfix/core.hpp"

namespace pomfix {

/// A partially ordered monoid (M, +, θ, ≤) with an optional binary supremum.
///
/// `leq` is a genuine partial order: when both `leq(a, b)` and `leq(b, a)` are
/// false the elements are incomparable, and callers must treat that as its own
/// outcome rather than as "greater".
template <class M>
struct Monoid {
  std::string carrier;
  std::function<M(const M&, const M&)> combine;
  M identity;
  std::function<bool(const M&, const M&)> leq;
  /// Empty unless the monoid has the Riesz property.
  std::function<M(const M&, const M&)> sup;
  std::function<std::string(const M&)> repr;
  /// Equality used when auditing algebraic identities; floating carriers
  /// compare up to rounding here, everything else uses ==.
  std::function<bool(const M&, const M&)> same_value;
  /// Catalog declaration: (M, Z_E) has the Weierstrass property.
  bool weierstrass = false;

  bool has_sup() const { return static_cast<bool>(sup); }
  bool positive(const M& x) const { return leq(identity, x); }
  bool is_identity(const M& x) const { return x == identity; }
  /// x < y, read as x ≤ y and x ≠ y.
  bool strictly_below(const M& x, const M& y) const { return leq(x, y) && !(x == y); }
  bool same(const M& a, const M& b) const { return same_value ? same_value(a, b) : a == b; }
  std::string show(const M& x) const { return repr ? repr(x) : std::string("<elem>"); }

  M fold(const std::vector<M>& xs) const {
    M acc = identity;
    for (const auto& x : xs) acc = combine(acc, x);
    return acc;
  }
};

/// A finite descending chain ε_1 > ε_2 > … > ε_k of positive elements.
///
/// The halving witness of rung i is the first rung δ with δ + δ ≤ ε_i. The
/// bottom rung is the truncation point of the infinite family and is not
/// required to have a witness.
template <class M>
class Ladder {
 public:
  Ladder(std::vector<M> rungs, const Monoid<M>& monoid) : rungs_(std::move(rungs)) {
    if (rungs_.empty()) throw PreconditionError("ladder must have at least one rung");
    witnesses_.resize(rungs_.size());
    for (std::size_t i = 0; i < rungs_.size(); ++i) {
      for (std::size_t j = 0; j < rungs_.size(); ++j) {
        if (monoid.leq(monoid.combine(rungs_[j], rungs_[j]), rungs_[i])) {
          witnesses_[i] = j;
          break;
        }
      }
    }
  }

  const std::vector<M>& rungs() const { return rungs_; }
  std::size_t size() const { return rungs_.size(); }
  const M& top() const { return rungs_.front(); }
  const M& bottom() const { return rungs_.back(); }
  const M& operator[](std::size_t i) const { return rungs_[i]; }
  std::optional<std::size_t> halving_witness(std::size_t i) const { return witnesses_.at(i); }

  /// The ladder cut off so that rung `new_bottom` is the bottom.
  Ladder truncated(std::size_t new_bottom, const Monoid<M>& monoid) const {
    if (new_bottom >= rungs_.size()) throw PreconditionError("truncation index out of range");
    return Ladder(std::vector<M>(rungs_.begin(), rungs_.begin() + static_cast<std::ptrdiff_t>(new_bottom) + 1),
                  monoid);
  }

 private:
  std::vector<M> rungs_;
  std::vector<std::optional<std::size_t>> witnesses_;
};

/// A finite prefix of an M₊-valued sequence and the largest settle index the
/// deciders may accept.
template <class M>
struct MTrace {
  std::vector<M> elements;
  std::size_t budget = 0;

  MTrace() = default;
  explicit MTrace(std::vector<M> xs) : elements(std::move(xs)), budget(elements.size()) {}
  MTrace(std::vector<M> xs, std::size_t b) : elements(std::move(xs)), budget(b) {}

  std::size_t size() const { return elements.size(); }
};

/// Result of a null-sequence or Cauchy decision.
///
/// `settle_index` is the 0-based index from which every examined quantity
/// lies strictly below the bottom rung; `last_violation` is the last index
/// where that failed.
struct TraceVerdict {
  Decision decision = Decision::indeterminate;
  std::size_t settle_index = 0;
  std::optional<std::size_t> last_violation;
};

namespace detail {

// A trace settles at N when everything from N on is good. N is accepted only
// if N ≤ budget and the confirming tail is at least as long as the prefix it
// settles (length ≥ 2N), so that late one-off dips are not mistaken for
// convergence.
inline TraceVerdict settle(const std::vector<bool>& good, std::size_t budget) {
  const std::size_t length = good.size();
  TraceVerdict v;
  for (std::size_t i = length; i-- > 0;) {
    if (!good[i]) {
      v.last_violation = i;
      break;
    }
  }
  v.settle_index = v.last_violation ? *v.last_violation + 1 : 0;
  // A violating last element gives settle_index == length, which never
  // satisfies the doubling condition for a non-empty trace.
  if (v.settle_index <= budget && 2 * v.settle_index <= length) {
    v.decision = Decision::holds;
    return v;
  }
  v.decision = length >= budget ? Decision::fails_within : Decision::indeterminate;
  return v;
}

template <class M>
void require_positive(const MTrace<M>& trace, const Monoid<M>& monoid, const char* op) {
  if (trace.elements.empty()) throw PreconditionError(fmt::format("{}: trace must be non-empty", op));
  for (std::size_t i = 0; i < trace.elements.size(); ++i) {
    if (!monoid.positive(trace.elements[i])) {
      throw PreconditionError(
          fmt::format("{}: element {} = {} lies outside M+", op, i, monoid.show(trace.elements[i])));
    }
  }
}

}  // namespace detail

/// Membership in Z_E at trace scale: does the trace fall and stay strictly
/// below the bottom rung within the budget?
template <class M>
TraceVerdict is_null_trace(const MTrace<M>& trace, const Ladder<M>& ladder, const Monoid<M>& monoid) {
  detail::require_positive(trace, monoid, "is_null_trace");
  std::vector<bool> good(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    good[i] = monoid.strictly_below(trace.elements[i], ladder.bottom());
  }
  return detail::settle(good, trace.budget);
}

/// Cauchy-series test: every window sum x_n + … + x_m past the settle index
/// lies strictly below the bottom rung.
///
/// Window sums grow with m because every term is ≥ θ, and shrink as n grows
/// because x_n + T ≥ θ + T. So the window [n, end] dominates every other
/// window starting at n, and the tails T_n = x_n + T_{n+1} (a right fold, no
/// inverses needed) decide all windows exactly in O(length) combines.
template <class M>
TraceVerdict cauchy_series_check(const MTrace<M>& trace, const Ladder<M>& ladder, const Monoid<M>& monoid) {
  detail::require_positive(trace, monoid, "cauchy_series_check");
  const std::size_t n = trace.size();
  std::vector<bool> good(n);
  M tail = trace.elements[n - 1];
  good[n - 1] = monoid.strictly_below(tail, ladder.bottom());
  for (std::size_t i = n - 1; i-- > 0;) {
    tail = monoid.combine(trace.elements[i], tail);
    good[i] = monoid.strictly_below(tail, ladder.bottom());
  }
  return detail::settle(good, trace.budget);
}

/// Tail sums T_n = x_n + … + x_end of a trace.
template <class M>
std::vector<M> tail_sums(const std::vector<M>& xs, const Monoid<M>& monoid) {
  std::vector<M> tails(xs.size(), monoid.identity);
  if (xs.empty()) return tails;
  tails.back() = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) tails[i] = monoid.combine(xs[i], tails[i + 1]);
  return tails;
}

/// A common upper bound, if one can be constructed: the folded supremum under
/// the Riesz property, otherwise an element above all others.
template <class M>
std::optional<M> is_bounded(const std::vector<M>& elements, const Monoid<M>& monoid) {
  if (elements.empty()) throw PreconditionError("is_bounded: elements must be non-empty");
  if (monoid.has_sup()) {
    M bound = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) bound = monoid.sup(bound, elements[i]);
    return bound;
  }
  for (const auto& candidate : elements) {
    bool above_all = std::all_of(elements.begin(), elements.end(),
                                 [&](const M& e) { return monoid.leq(e, candidate); });
    if (above_all) return candidate;
  }
  return std::nullopt;
}

/// Randomized audit of the partially ordered monoid axioms on `samples`.
template <class M>
ValidationReport validate_monoid(const Monoid<M>& monoid, const std::vector<M>& samples, std::size_t trials,
                                 Rng& rng) {
  if (samples.empty()) throw PreconditionError("validate_monoid: samples must be non-empty");
  ValidationReport report;
  auto pick = [&]() -> const M& { return samples[rng.index(samples.size())]; };
  auto show = [&](const M& x) { return monoid.show(x); };

  auto& assoc = report.add("associativity");
  auto& ident = report.add("identity");
  auto& refl = report.add("reflexivity");
  auto& trans = report.add("transitivity");
  auto& anti = report.add("antisymmetry");
  auto& compat = report.add("order-compatibility");
  AxiomResult* riesz = monoid.has_sup() ? &report.add("riesz-supremum") : nullptr;

  for (std::size_t t = 0; t < trials; ++t) {
    const M& a = pick();
    const M& b = pick();
    const M& c = pick();
    const M& d = pick();

    if (assoc.passed) {
      ++assoc.trials;
      M lhs = monoid.combine(monoid.combine(a, b), c);
      M rhs = monoid.combine(a, monoid.combine(b, c));
      if (!monoid.same(lhs, rhs)) {
        assoc.passed = false;
        assoc.counterexample =
            fmt::format("({}, {}, {}): (a+b)+c = {} but a+(b+c) = {}", show(a), show(b), show(c), show(lhs), show(rhs));
      }
    }
    if (ident.passed) {
      ++ident.trials;
      if (!(monoid.combine(monoid.identity, a) == a) || !(monoid.combine(a, monoid.identity) == a)) {
        ident.passed = false;
        ident.counterexample = fmt::format("({})", show(a));
      }
    }
    if (refl.passed) {
      ++refl.trials;
      if (!monoid.leq(a, a)) {
        refl.passed = false;
        refl.counterexample = fmt::format("({})", show(a));
      }
    }
    if (trans.passed) {
      ++trans.trials;
      // Chains are rare among random picks; also try the ordered arrangement
      // of the three picks when it exists.
      std::vector<const M*> p{&a, &b, &c};
      for (int r = 0; r < 6 && trans.passed; ++r) {
        const M& x = *p[0];
        const M& y = *p[1];
        const M& z = *p[2];
        if (monoid.leq(x, y) && monoid.leq(y, z) && !monoid.leq(x, z)) {
          trans.passed = false;
          trans.counterexample = fmt::format("({}, {}, {})", show(x), show(y), show(z));
        }
        std::next_permutation(p.begin(), p.end());
      }
    }
    if (anti.passed) {
      ++anti.trials;
      if (monoid.leq(a, b) && monoid.leq(b, a) && !(a == b)) {
        anti.passed = false;
        anti.counterexample = fmt::format("({}, {})", show(a), show(b));
      }
    }
    if (compat.passed) {
      ++compat.trials;
      // Order the two pairs so the premise is actually exercised.
      const M& x1 = monoid.leq(a, b) ? a : b;
      const M& y1 = monoid.leq(a, b) ? b : a;
      const M& x2 = monoid.leq(c, d) ? c : d;
      const M& y2 = monoid.leq(c, d) ? d : c;
      if (monoid.leq(x1, y1) && monoid.leq(x2, y2) &&
          !monoid.leq(monoid.combine(x1, x2), monoid.combine(y1, y2))) {
        compat.passed = false;
        compat.counterexample = fmt::format("({} <= {}, {} <= {})", show(x1), show(y1), show(x2), show(y2));
      }
    }
    if (riesz != nullptr && riesz->passed) {
      ++riesz->trials;
      M s = monoid.sup(a, b);
      if (!monoid.leq(a, s) || !monoid.leq(b, s)) {
        riesz->passed = false;
        riesz->counterexample = fmt::format("sup({}, {}) = {} is not an upper bound", show(a), show(b), show(s));
      } else {
        // Least among sampled common upper bounds.
        for (const M* u : {&c, &d}) {
          if (monoid.leq(a, *u) && monoid.leq(b, *u) && !monoid.leq(s, *u)) {
            riesz->passed = false;
            riesz->counterexample =
                fmt::format("sup({}, {}) = {} is not below the bound {}", show(a), show(b), show(s), show(*u));
            break;
          }
        }
      }
    }
  }

  auto& pos = report.add("nontrivial-positive-cone");
  pos.trials = samples.size();
  pos.passed = std::any_of(samples.begin(), samples.end(),
                           [&](const M& x) { return monoid.positive(x) && !(x == monoid.identity); });
  if (!pos.passed) pos.counterexample = "no sampled element lies in M+ \\ {theta}";
  return report;
}

/// Checks positivity, strict descent and halving (every rung above the bottom
/// one needs a witness δ with δ + δ ≤ ε).
template <class M>
ValidationReport validate_ladder(const Monoid<M>& monoid, const Ladder<M>& ladder) {
  ValidationReport report;
  auto& pos = report.add("positivity");
  auto& desc = report.add("strict-descent");
  auto& half = report.add("halving");
  const auto& r = ladder.rungs();
  for (std::size_t i = 0; i < r.size(); ++i) {
    ++pos.trials;
    if (pos.passed && (!monoid.positive(r[i]) || r[i] == monoid.identity)) {
      pos.passed = false;
      pos.counterexample = fmt::format("rung {} = {}", i, monoid.show(r[i]));
    }
    if (i + 1 < r.size()) {
      ++desc.trials;
      if (desc.passed && !monoid.strictly_below(r[i + 1], r[i])) {
        desc.passed = false;
        desc.counterexample = fmt::format("rung {} = {} is not strictly below rung {} = {}", i + 1,
                                          monoid.show(r[i + 1]), i, monoid.show(r[i]));
      }
      ++half.trials;
      if (half.passed && !ladder.halving_witness(i)) {
        half.passed = false;
        half.counterexample = fmt::format("rung {} = {} has no rung d with d+d <= it", i, monoid.show(r[i]));
      }
    }
  }
  half.note = "bottom rung is the truncation point and needs no witness";
  return report;
}

// ---------------------------------------------------------------------------
// Built-in monoids.

bool real_same_value(double a, double b);

/// (ℝ₊, +, 0, ≤) with sup = max.
Monoid<double> real_nonneg();

/// ℝ^n with coordinatewise addition, order and max; `carrier` names it.
Monoid<std::vector<double>> pointwise_real(std::size_t n, std::string carrier);
inline Monoid<std::vector<double>> real_vector(std::size_t dim) {
  return pointwise_real(dim, fmt::format("real_vector{{{}}}", dim));
}
inline Monoid<std::vector<double>> grid_function(std::size_t nodes) {
  return pointwise_real(nodes, fmt::format("grid_function{{{}}}", nodes));
}

/// Dyadic real ladder {2^-first, …, 2^-last}.
Ladder<double> dyadic_ladder(int first_exponent, int last_exponent);

/// Ladder of constant vectors at dyadic heights.
Ladder<std::vector<double>> constant_dyadic_ladder(std::size_t dim, int first_exponent, int last_exponent);

/// Finite product of monoids sharing one element type, with coordinatewise
/// operations. Sup and the Weierstrass declaration carry over when every
/// factor has them.
template <class M>
Monoid<std::vector<M>> product_monoid(std::vector<Monoid<M>> factors) {
  if (factors.empty()) throw PreconditionError("product_monoid: no factors");
  Monoid<std::vector<M>> p;
  std::string name = "product{";
  for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "," : "") + factors[i].carrier;
  p.carrier = name + "}";
  for (const auto& f : factors) p.identity.push_back(f.identity);
  p.combine = [factors](const std::vector<M>& a, const std::vector<M>& b) {
    std::vector<M> out;
    out.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) out.push_back(factors[i].combine(a[i], b[i]));
    return out;
  };
  p.leq = [factors](const std::vector<M>& a, const std::vector<M>& b) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!factors[i].leq(a[i], b[i])) return false;
    }
    return true;
  };
  bool all_sup = std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.has_sup(); });
  if (all_sup) {
    p.sup = [factors](const std::vector<M>& a, const std::vector<M>& b) {
      std::vector<M> out;
      for (std::size_t i = 0; i < factors.size(); ++i) out.push_back(factors[i].sup(a[i], b[i]));
      return out;
    };
  }
  p.repr = [factors](const std::vector<M>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + factors[i].show(a[i]);
    return s + ")";
  };
  p.same_value = [factors](const std::vector<M>& a, const std::vector<M>& b) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (!factors[i].same(a[i], b[i])) return false;
    }
    return true;
  };
  p.weierstrass = std::all_of(factors.begin(), factors.end(), [](const auto& f) { return f.weierstrass; });
  return p;
}

/// Diagonal product ladder: rung i is (ε_i, …, ε_i) built from each factor's
/// i-th rung. All factor ladders must have the same length.
template <class M>
Ladder<std::vector<M>> product_ladder(const std::vector<Ladder<M>>& ladders, const Monoid<std::vector<M>>& product) {
  if (ladders.empty()) throw PreconditionError("product_ladder: no factors");
  const std::size_t k = ladders.front().size();
  for (const auto& l : ladders) {
    if (l.size() != k) throw PreconditionError("product_ladder: factor ladders differ in length");
  }
  std::vector<std::vector<M>> rungs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& l : ladders) rungs[i].push_back(l[i]);
  }
  return Ladder<std::vector<M>>(std::move(rungs), product);
}

}  // namespace pomfix
