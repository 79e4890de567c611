#include "pomfix/relation.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace pomfix {

Relation Relation::diagonal(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  std::fill(r.bits_.begin(), r.bits_.end(), 1);
  return r;
}

Relation Relation::from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Relation r(n);
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n) throw PreconditionError("Relation::from_pairs: point index out of range");
    r.insert(x, y);
  }
  return r;
}

std::size_t Relation::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

Relation Relation::compose(const Relation& other) const {
  if (other.n_ != n_) throw PreconditionError("Relation::compose: point sets differ");
  Relation out(n_);
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t z = 0; z < n_; ++z) {
      if (!contains(x, z)) continue;
      for (std::size_t y = 0; y < n_; ++y) {
        if (other.contains(z, y)) out.insert(x, y);
      }
    }
  }
  return out;
}

Relation Relation::unite(const Relation& other) const {
  Relation out(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

Relation Relation::intersect(const Relation& other) const {
  Relation out(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

Relation Relation::transpose() const {
  Relation out(n_);
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if (contains(x, y)) out.insert(y, x);
    }
  }
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

bool Relation::is_reflexive() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!contains(i, i)) return false;
  }
  return true;
}

bool Relation::is_symmetric() const { return *this == transpose(); }

std::string Relation::to_string() const {
  // A reflexive relation prints as D plus its off-diagonal pairs.
  const bool reflexive = is_reflexive();
  std::string s = reflexive ? "{D" : "{";
  bool first = !reflexive;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if ((reflexive && x == y) || !contains(x, y)) continue;
      s += fmt::format("{}({},{})", first ? "" : " ", x, y);
      first = false;
    }
  }
  return s + "}";
}

Monoid<Relation> relation_monoid(std::size_t points) {
  Monoid<Relation> m;
  m.carrier = fmt::format("relation{{{}}}", points);
  m.identity = Relation::diagonal(points);
  m.combine = [](const Relation& a, const Relation& b) { return a.compose(b); };
  m.leq = [](const Relation& a, const Relation& b) { return a.subset_of(b); };
  m.sup = [](const Relation& a, const Relation& b) { return a.unite(b); };
  m.repr = [](const Relation& a) { return a.to_string(); };
  m.weierstrass = false;
  return m;
}

Relation random_reflexive_relation(std::size_t points, double p, Rng& rng) {
  Relation r = Relation::diagonal(points);
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t y = 0; y < points; ++y) {
      if (x != y && rng.coin(p)) r.insert(x, y);
    }
  }
  return r;
}

}  // namespace pomfix
