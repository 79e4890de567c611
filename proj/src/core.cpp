#include "pomfix/core.hpp"

#include <fmt/format.h>

namespace pomfix {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::holds:
      return "holds";
    case Decision::fails_within:
      return "fails-within-budget";
    case Decision::indeterminate:
      return "indeterminate";
  }
  return "?";
}

bool ValidationReport::passed() const {
  for (const auto& e : entries) {
    if (!e.passed) return false;
  }
  return true;
}

const AxiomResult* ValidationReport::find(const std::string& axiom) const {
  for (const auto& e : entries) {
    if (e.axiom == axiom) return &e;
  }
  return nullptr;
}

AxiomResult& ValidationReport::add(std::string axiom) {
  entries.push_back(AxiomResult{std::move(axiom), true, 0, {}, {}});
  return entries.back();
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& e : entries) {
    if (e.passed) {
      out += fmt::format("{}: PASS({})", e.axiom, e.trials);
    } else {
      out += fmt::format("{}: FAIL counterexample {}", e.axiom, e.counterexample);
    }
    if (!e.note.empty()) out += fmt::format(" [{}]", e.note);
    out += '\n';
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw PreconditionError("Rng::index on empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

bool Rng::coin(double p_true) {
  std::bernoulli_distribution dist(p_true);
  return dist(engine_);
}

std::string format_real(double v) { return fmt::format("{}", v); }

}  // namespace pomfix
