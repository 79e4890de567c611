#include "pomfix/multifix.hpp"

namespace pomfix {

void SigmaSpec::validate() const {
  if (size == 0) throw PreconditionError("SigmaSpec: empty index set");
  if (!sigma) throw PreconditionError("SigmaSpec: sigma missing");
  if (p.size() != size) throw PreconditionError("SigmaSpec: P must have one entry per index");
  for (std::size_t a = 0; a < size; ++a) {
    if (p[a] != 0 && p[a] != 1) throw PreconditionError("SigmaSpec: P values must be 0 or 1");
    for (std::size_t b = 0; b < size; ++b) {
      if (sigma(a, b) >= size) {
        throw PreconditionError(fmt::format("SigmaSpec: sigma({}, {}) leaves the index set", a, b));
      }
    }
  }
}

SigmaSpec coupled_sigma() {
  SigmaSpec s;
  s.size = 2;
  s.sigma = [](std::size_t a, std::size_t b) { return a == 0 ? b : 1 - b; };
  s.p = {0, 1};
  return s;
}

}  // namespace pomfix
