#pragma once

// σ-multiple fixed points on Y^A for a finite index set A, with the mixed
// order ≼_P, and coupled fixed points as the two-index swap case.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pomfix/engine.hpp"
#include "pomfix/spaces.hpp"

namespace pomfix {

/// Index set A = {0, …, size-1} with the reindexing σ: A×A → A and the sign
/// pattern P: A → {0, 1}.
struct SigmaSpec {
  std::size_t size = 0;
  std::function<std::size_t(std::size_t alpha, std::size_t beta)> sigma;
  std::vector<int> p;

  void validate() const;
};

/// σ(0, β) = β, σ(1, β) = 1 − β, P = (0, 1).
SigmaSpec coupled_sigma();

template <class Y>
using Profile = std::vector<Y>;

/// (σf)(x)(α) = f(β ↦ x(σ(α, β))).
template <class Y>
std::function<Profile<Y>(const Profile<Y>&)> sigma_lift(const SigmaSpec& s,
                                                        std::function<Y(const Profile<Y>&)> f) {
  s.validate();
  return [s, f](const Profile<Y>& x) {
    if (x.size() != s.size) throw PreconditionError("sigma_lift: profile size differs from |A|");
    Profile<Y> out;
    out.reserve(s.size);
    Profile<Y> reindexed(s.size);
    for (std::size_t a = 0; a < s.size; ++a) {
      for (std::size_t b = 0; b < s.size; ++b) reindexed[b] = x[s.sigma(a, b)];
      out.push_back(f(reindexed));
    }
    return out;
  };
}

/// x ≼_P y: x(α) ≤ y(α) where P(α) = 0 and y(α) ≤ x(α) where P(α) = 1.
template <class Y>
bool p_order_leq(const SigmaSpec& s, const Profile<Y>& x, const Profile<Y>& y,
                 const std::function<bool(const Y&, const Y&)>& base_leq) {
  for (std::size_t a = 0; a < s.size; ++a) {
    const bool ok = s.p[a] == 0 ? base_leq(x[a], y[a]) : base_leq(y[a], x[a]);
    if (!ok) return false;
  }
  return true;
}

/// Builds the coordinatewise product over Y^A and runs the monotone driver
/// with ≼_P. The base space must be declared regular and co-regular.
template <class Y, class M>
SolveReport<Profile<Y>, std::vector<M>> solve_multiple_fixed_point(
    const DistanceSpace<Y, M>& space_y, const SigmaSpec& s, std::function<Y(const Profile<Y>&)> f,
    std::function<bool(const Y&, const Y&)> base_leq, const Profile<Y>& x0,
    const LambdaSequence<std::vector<M>>& lam, const SequentialOptions<Profile<Y>, std::vector<M>>& opt = {}) {
  s.validate();
  if (!space_y.regular || !space_y.co_regular) {
    throw PreconditionError(
        fmt::format("solve_multiple_fixed_point: {} is not declared regular and co-regular", space_y.description));
  }
  if (x0.size() != s.size) throw PreconditionError("solve_multiple_fixed_point: seed size differs from |A|");
  auto product = coordinatewise_product(std::vector<DistanceSpace<Y, M>>(s.size, space_y));
  MapSpec<Profile<Y>> lifted;
  lifted.apply = sigma_lift<Y>(s, std::move(f));
  lifted.order_leq = [s, base_leq](const Profile<Y>& a, const Profile<Y>& b) {
    return p_order_leq<Y>(s, a, b, base_leq);
  };
  lifted.description = "sigma lift";
  auto rep = solve_monotone(product, lifted, lam, x0, opt);
  rep.driver = "multiple-fixed-point/" + rep.driver;
  return rep;
}

/// Coupled fixed point (x̄, ȳ) = (f(x̄, ȳ), f(ȳ, x̄)) via the swap σ with
/// P = (0, 1).
template <class Y, class M>
SolveReport<Profile<Y>, std::vector<M>> coupled_fixed_point(
    const DistanceSpace<Y, M>& space_y, std::function<Y(const Y&, const Y&)> f,
    std::function<bool(const Y&, const Y&)> base_leq, const Y& x0, const Y& y0,
    const LambdaSequence<std::vector<M>>& lam, const SequentialOptions<Profile<Y>, std::vector<M>>& opt = {}) {
  auto g = [f](const Profile<Y>& p) { return f(p[0], p[1]); };
  auto rep = solve_multiple_fixed_point<Y, M>(space_y, coupled_sigma(), g, std::move(base_leq), Profile<Y>{x0, y0},
                                              lam, opt);
  rep.driver = "coupled/" + rep.driver;
  return rep;
}

}  // namespace pomfix
