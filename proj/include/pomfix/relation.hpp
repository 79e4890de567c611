#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pomfix/monoid.hpp"

namespace pomfix {

/// A binary relation on the point set {0, …, n-1}, stored as a dense n×n
/// boolean matrix.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  static Relation diagonal(std::size_t n);
  static Relation full(std::size_t n);
  static Relation from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t points() const { return n_; }
  bool contains(std::size_t x, std::size_t y) const { return bits_[x * n_ + y] != 0; }
  void insert(std::size_t x, std::size_t y) { bits_[x * n_ + y] = 1; }
  std::size_t count() const;

  /// A∘B = {(x,y) : ∃z (x,z) ∈ A, (z,y) ∈ B}.
  Relation compose(const Relation& other) const;
  Relation unite(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  Relation transpose() const;
  bool subset_of(const Relation& other) const;
  bool is_reflexive() const;
  bool is_symmetric() const;

  std::string to_string() const;

  friend bool operator==(const Relation& a, const Relation& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Reflexive relations on n points under composition, with θ = Δ, order by
/// inclusion and sup = union. Not Weierstrass: X×X bounds every partial sum.
Monoid<Relation> relation_monoid(std::size_t points);

/// Random reflexive relation with off-diagonal density `p`.
Relation random_reflexive_relation(std::size_t points, double p, Rng& rng);

}  // namespace pomfix
