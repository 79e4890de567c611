#pragma once

// Uniform structures on finite point sets recast as relation-monoid-valued
// distances.

#include <cstddef>
#include <vector>

#include "pomfix/relation.hpp"
#include "pomfix/spaces.hpp"

namespace pomfix {

/// ⋂{ε ∈ base : (x, y) ∈ ε}. The empty intersection is X×X, the top of the
/// inclusion order.
Relation entourage_distance(const std::vector<Relation>& base, std::size_t x, std::size_t y);

struct UniformSpace {
  DistanceSpace<std::size_t, Relation> space;
  /// ε_r = {(x,y) : ρ(x,y) ≤ r}, one per threshold, widest first.
  std::vector<Relation> base;
  std::vector<double> thresholds;
};

/// Builds the entourage space of the sublevel relations of ρ.
///
/// Off the diagonal the distance is entourage_distance over the base. On the
/// diagonal it is Δ, the value the full (infinite, separating) family of
/// sublevel relations produces; the finite base alone would give the
/// narrowest rung instead. The kind is `distance` when ρ separates points and
/// `pseudo` otherwise.
///
/// Sublevels equal to Δ or to the previous kept sublevel are dropped, since
/// rungs must be positive and strictly descending; `thresholds` records the
/// smallest radius of each kept rung.
///
/// Throws PreconditionError unless ρ is square, symmetric and zero on the
/// diagonal, and the thresholds strictly decrease with each at most half its
/// predecessor (so that ε_{r'}∘ε_{r'} ⊆ ε_r).
UniformSpace make_uniform_from_pseudometric(const std::vector<std::vector<double>>& rho,
                                            const std::vector<double>& thresholds);

/// Euclidean distance matrix of points in the plane.
std::vector<std::vector<double>> euclidean_matrix(const std::vector<std::array<double, 2>>& points);

/// n points drawn uniformly from the unit square.
std::vector<std::array<double, 2>> random_unit_square(std::size_t n, Rng& rng);

}  // namespace pomfix
