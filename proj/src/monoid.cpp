#include "pomfix/monoid.hpp"

#include <algorithm>
#include <cmath>

namespace pomfix {

bool real_same_value(double a, double b) {
  if (a == b) return true;
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-12 * scale;
}

Monoid<double> real_nonneg() {
  Monoid<double> m;
  m.carrier = "real_nonneg";
  m.combine = [](double a, double b) { return a + b; };
  m.identity = 0.0;
  m.leq = [](double a, double b) { return a <= b; };
  m.sup = [](double a, double b) { return std::max(a, b); };
  m.repr = [](double a) { return format_real(a); };
  m.same_value = real_same_value;
  m.weierstrass = true;
  return m;
}

Monoid<std::vector<double>> pointwise_real(std::size_t n, std::string carrier) {
  using V = std::vector<double>;
  Monoid<V> m;
  m.carrier = std::move(carrier);
  m.identity = V(n, 0.0);
  m.combine = [](const V& a, const V& b) {
    V out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
  };
  m.leq = [](const V& a, const V& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!(a[i] <= b[i])) return false;
    }
    return true;
  };
  m.sup = [](const V& a, const V& b) {
    V out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
  };
  m.repr = [](const V& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + format_real(a[i]);
    return s + "]";
  };
  m.same_value = [](const V& a, const V& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!real_same_value(a[i], b[i])) return false;
    }
    return true;
  };
  m.weierstrass = true;
  return m;
}

Ladder<double> dyadic_ladder(int first_exponent, int last_exponent) {
  if (last_exponent < first_exponent) throw PreconditionError("dyadic_ladder: empty exponent range");
  std::vector<double> rungs;
  for (int e = first_exponent; e <= last_exponent; ++e) rungs.push_back(std::ldexp(1.0, -e));
  return Ladder<double>(std::move(rungs), real_nonneg());
}

Ladder<std::vector<double>> constant_dyadic_ladder(std::size_t dim, int first_exponent, int last_exponent) {
  if (last_exponent < first_exponent) throw PreconditionError("constant_dyadic_ladder: empty exponent range");
  std::vector<std::vector<double>> rungs;
  for (int e = first_exponent; e <= last_exponent; ++e) rungs.emplace_back(dim, std::ldexp(1.0, -e));
  return Ladder<std::vector<double>>(std::move(rungs), pointwise_real(dim, "grid_function"));
}

}  // namespace pomfix
