#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pomfix {

/// Raised when an operation is called outside its precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Outcome of a finite-horizon decision about an infinite-sequence property.
///
/// `holds` means the property was confirmed inside the budget, `fails_within`
/// means the trace covered the budget without confirming it, and
/// `indeterminate` means the trace ended before the budget was reached.
enum class Decision { holds, fails_within, indeterminate };

std::string to_string(Decision d);

/// One line of a validation report: an axiom and either PASS or a witness.
struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::size_t trials = 0;
  std::string counterexample;
  std::string note;
};

struct ValidationReport {
  // deque: references returned by add() stay valid as entries grow.
  std::deque<AxiomResult> entries;

  bool passed() const;
  const AxiomResult* find(const std::string& axiom) const;
  AxiomResult& add(std::string axiom);
  std::string to_text() const;
};

/// Deterministic generator with cheap independent sub-streams.
///
/// Every random choice in the library flows from one user seed; `split(k)`
/// derives the k-th child stream through a splitmix64 finalizer so that
/// parallel workers stay reproducible regardless of scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng split(std::uint64_t stream) const;
  std::uint64_t seed() const { return seed_; }

  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);
  bool coin(double p_true = 0.5);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Shortest round-trip text for a double.
std::string format_real(double v);

}  // namespace pomfix
