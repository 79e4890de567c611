#include "pomfix/engine.hpp"

namespace pomfix {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::certified: return "Certified";
    case SolveStatus::hypothesis_violated: return "HypothesisViolated";
    case SolveStatus::budget_exhausted: return "BudgetExhausted";
  }
  return "?";
}

std::string to_string(SequentialMode m) {
  return m == SequentialMode::series ? "series" : "orbit_bounded";
}

}  // namespace pomfix
