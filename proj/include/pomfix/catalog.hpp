#pragma once

// Named instances: the real-line spaces, the convergent-but-not-Cauchy omega
// space, samplers for the falsifiers, and a type-erased lookup by catalog
// name used by the CLI and the acceptance suite.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pomfix/monoid.hpp"
#include "pomfix/spaces.hpp"
#include "pomfix/uniform.hpp"

namespace pomfix::catalog {

/// {1, 1/2, 1/4, 1/8, 1/16}.
Ladder<double> default_real_ladder();

DistanceSpace<double, double> real_abs();
/// |x−y| when it is at most 1, (x−y)² beyond.
DistanceSpace<double, double> snowflake();
DistanceSpace<double, double> squared();
/// x ∨ y on ℝ₊ (dislocated: d(x,x) = x).
DistanceSpace<double, double> dislocated_max();

/// Points of ℕ ∪ Ω ∪ {∞}; `index` is n for naturals and j for ω_j.
struct OmegaPoint {
  enum class Kind : std::uint8_t { natural, omega, infinity };
  Kind kind = Kind::infinity;
  std::uint32_t index = 0;

  static OmegaPoint natural(std::uint32_t n) { return {Kind::natural, n}; }
  static OmegaPoint omega(std::uint32_t j) { return {Kind::omega, j}; }
  static OmegaPoint infinity() { return {Kind::infinity, 0}; }

  friend bool operator==(const OmegaPoint& a, const OmegaPoint& b) {
    return a.kind == b.kind && a.index == b.index;
  }
};

std::string to_string(const OmegaPoint& p);

/// The omega space truncated to naturals and omegas up to `n`.
DistanceSpace<OmegaPoint, double> omega_counterexample(std::size_t n);
double omega_distance(const OmegaPoint& x, const OmegaPoint& y);
std::vector<OmegaPoint> omega_carrier(std::size_t n);
/// 1, ω_1, 2, ω_2, …, pairs = number of (n, ω_n) pairs.
std::vector<OmegaPoint> omega_interleaved(std::size_t pairs);

// Samples and samplers.
std::vector<double> real_samples(Rng& rng, std::size_t count, bool nonnegative);
FwSampler<double> real_line_sampler(bool nonnegative);
FwSampler<OmegaPoint> omega_sampler(std::size_t n);
FwSampler<std::size_t> finite_sampler(std::size_t points);
/// Coordinatewise sampler for X^m assembled from per-factor samplers.
FwSampler<std::vector<double>> vector_sampler(std::vector<FwSampler<double>> factors);

/// Null and non-null traces used to audit (φ, ζ) pairs.
std::vector<MTrace<double>> real_null_battery(std::size_t length);

/// 8 points of the unit square (seeded), Euclidean ρ, thresholds
/// {1, 1/2, 1/4, 1/8}.
UniformSpace euclidean_uniform(std::size_t points, std::uint64_t seed);

/// Type-erased view of a catalog space for name-driven callers.
struct SpaceEntry {
  std::string name;
  std::string description;
  std::string kind;
  /// Monoid, ladder and space axiom audits, merged with prefixes.
  std::function<ValidationReport(std::size_t trials, std::uint64_t seed)> axioms;
  /// Triangle inequality: exhaustive on finite carriers, sampled otherwise.
  std::function<ValidationReport(std::size_t trials, std::uint64_t seed)> triangle;
  /// Counterexample record, or nullopt when not falsified.
  std::function<std::optional<std::string>(FwLevel, std::size_t trials, std::uint64_t seed)> falsify;
};

/// Catalog names: real_abs, snowflake, squared, dislocated_max,
/// omega_counterexample{N}, product{sigma|vee|coordinatewise,<name>,...},
/// gauge{dim}, uniform_pseudometric{points}. Throws PreconditionError on an
/// unknown or malformed name.
SpaceEntry lookup_space(const std::string& name, std::uint64_t seed = 0);

std::vector<std::string> space_names();

}  // namespace pomfix::catalog
