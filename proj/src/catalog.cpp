#include "pomfix/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace pomfix::catalog {

namespace {

std::string show_real(const double& x) { return format_real(x); }

DistanceSpace<double, double> real_space(std::string name, std::function<double(const double&, const double&)> d,
                                         SpaceKind kind, bool regular) {
  return DistanceSpace<double, double>{std::move(name), std::move(d), kind, real_nonneg(), default_real_ladder(),
                                       show_real,       regular,      regular};
}

void merge(ValidationReport& into, const ValidationReport& from, const std::string& prefix) {
  for (const auto& e : from.entries) {
    auto& r = into.add(prefix + e.axiom);
    r = e;
    r.axiom = prefix + e.axiom;
  }
}

std::vector<std::string> split_args(const std::string& inner) {
  // Top-level comma split that respects nested braces.
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : inner) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& context) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || v == 0) throw PreconditionError(fmt::format("{}: bad count '{}'", context, s));
  return v;
}

}  // namespace

Ladder<double> default_real_ladder() { return dyadic_ladder(0, 4); }

DistanceSpace<double, double> real_abs() {
  return real_space("real_abs", [](const double& x, const double& y) { return std::fabs(x - y); },
                    SpaceKind::distance, true);
}

DistanceSpace<double, double> snowflake() {
  return real_space(
      "snowflake",
      [](const double& x, const double& y) {
        const double a = std::fabs(x - y);
        return a <= 1.0 ? a : a * a;
      },
      SpaceKind::distance, false);
}

DistanceSpace<double, double> squared() {
  return real_space("squared", [](const double& x, const double& y) { return (x - y) * (x - y); },
                    SpaceKind::distance, false);
}

DistanceSpace<double, double> dislocated_max() {
  return real_space("dislocated_max", [](const double& x, const double& y) { return std::max(x, y); },
                    SpaceKind::dislocated, false);
}

std::string to_string(const OmegaPoint& p) {
  switch (p.kind) {
    case OmegaPoint::Kind::natural: return fmt::format("{}", p.index);
    case OmegaPoint::Kind::omega: return fmt::format("w{}", p.index);
    case OmegaPoint::Kind::infinity: return "inf";
  }
  return "?";
}

double omega_distance(const OmegaPoint& x, const OmegaPoint& y) {
  using K = OmegaPoint::Kind;
  if (x == y) return 0.0;
  if (x.kind == y.kind && x.kind != K::infinity) return 1.0;
  // natural n against Ω ∪ {∞}: 1/n²; ω_j against ∞: 1/j². Either way the
  // index of the lower-kind point decides (natural < omega < infinity).
  const OmegaPoint& a = x.kind <= y.kind ? x : y;
  const double k = a.index;
  return 1.0 / (k * k);
}

DistanceSpace<OmegaPoint, double> omega_counterexample(std::size_t n) {
  if (n == 0) throw PreconditionError("omega_counterexample: N must be positive");
  return DistanceSpace<OmegaPoint, double>{fmt::format("omega_counterexample{{{}}}", n),
                                           omega_distance,
                                           SpaceKind::distance,
                                           real_nonneg(),
                                           default_real_ladder(),
                                           [](const OmegaPoint& p) { return to_string(p); },
                                           false,
                                           false};
}

std::vector<OmegaPoint> omega_carrier(std::size_t n) {
  std::vector<OmegaPoint> pts;
  for (std::uint32_t i = 1; i <= n; ++i) pts.push_back(OmegaPoint::natural(i));
  for (std::uint32_t i = 1; i <= n; ++i) pts.push_back(OmegaPoint::omega(i));
  pts.push_back(OmegaPoint::infinity());
  return pts;
}

std::vector<OmegaPoint> omega_interleaved(std::size_t pairs) {
  std::vector<OmegaPoint> pts;
  for (std::uint32_t i = 1; i <= pairs; ++i) {
    pts.push_back(OmegaPoint::natural(i));
    pts.push_back(OmegaPoint::omega(i));
  }
  return pts;
}

std::vector<double> real_samples(Rng& rng, std::size_t count, bool nonnegative) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double v = 0.0;
    switch (rng.index(4)) {
      case 0: v = rng.uniform(-10.0, 10.0); break;
      case 1: v = static_cast<double>(rng.index(7)) - 3.0; break;
      case 2: v = std::ldexp(static_cast<double>(rng.index(33)) - 16.0, -4); break;
      default: v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-6.0, 0.0)); break;
    }
    // On the 2^-40 grid, differences and sums of two differences are exact.
    v = std::ldexp(std::round(std::ldexp(v, 40)), -40);
    out.push_back(nonnegative ? std::fabs(v) : v);
  }
  return out;
}

FwSampler<double> real_line_sampler(bool nonnegative) {
  FwSampler<double> s;
  s.chain = [nonnegative](Rng& rng) {
    const std::size_t n = 2 + rng.index(199);
    const double h = std::pow(10.0, rng.uniform(-3.0, 0.0));
    const std::size_t mode = rng.index(3);
    std::vector<double> xs{nonnegative ? rng.uniform(0.0, 5.0) : rng.uniform(-5.0, 5.0)};
    for (std::size_t k = 1; k < n; ++k) {
      double step = h;
      if (mode == 1) step = h * rng.uniform(-1.0, 1.0);
      if (mode == 2) step = h * std::pow(0.9, static_cast<double>(k)) * (rng.coin() ? 1.0 : -1.0);
      const double next = xs.back() + step;
      xs.push_back(nonnegative ? std::fabs(next) : next);
    }
    return xs;
  };
  s.sequences = [nonnegative](Rng& rng) {
    const std::size_t len = 64 + rng.index(193);
    const double z = nonnegative ? rng.uniform(0.0, 5.0) : rng.uniform(-5.0, 5.0);
    const std::size_t rate = rng.index(3);
    auto r = [rate](std::size_t k) {
      const double n = static_cast<double>(k + 1);
      if (rate == 0) return 1.0 / n;
      if (rate == 1) return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(k, 60)));
      return 1.0 / (n * n);
    };
    const double sx = rng.uniform(-2.0, 2.0);
    const double sy = rng.uniform(-2.0, 2.0);
    const double sz = rng.uniform(-2.0, 2.0);
    const bool z_fixed = rng.coin();
    FwSequences<double> out;
    auto clamp = [nonnegative](double v) { return nonnegative ? std::fabs(v) : v; };
    for (std::size_t k = 0; k < len; ++k) {
      out.xs.push_back(clamp(z + sx * r(k)));
      out.ys.push_back(clamp(z + sy * r(k)));
      out.zs.push_back(z_fixed ? clamp(z) : clamp(z + sz * r(k)));
    }
    return out;
  };
  return s;
}

FwSampler<OmegaPoint> omega_sampler(std::size_t n) {
  FwSampler<OmegaPoint> s;
  const auto cap = static_cast<std::uint32_t>(n);
  s.chain = [cap](Rng& rng) {
    auto random_point = [&]() {
      switch (rng.index(3)) {
        case 0: return OmegaPoint::natural(1 + static_cast<std::uint32_t>(rng.index(cap)));
        case 1: return OmegaPoint::omega(1 + static_cast<std::uint32_t>(rng.index(cap)));
        default: return OmegaPoint::infinity();
      }
    };
    const std::size_t len = 2 + rng.index(7);
    std::vector<OmegaPoint> xs{random_point()};
    for (std::size_t k = 1; k < len; ++k) {
      const OmegaPoint cur = xs.back();
      const double u = rng.uniform(0.0, 1.0);
      OmegaPoint next = random_point();
      if (cur.kind == OmegaPoint::Kind::natural) {
        if (u < 0.4) next = OmegaPoint::omega(cur.index);
        else if (u < 0.6 && cur.index > 1) next = OmegaPoint::omega(cur.index - 1);
        else if (u < 0.7) next = OmegaPoint::infinity();
      } else if (cur.kind == OmegaPoint::Kind::omega) {
        if (u < 0.4 && cur.index < cap) next = OmegaPoint::natural(cur.index + 1);
        else if (u < 0.6) next = OmegaPoint::natural(cur.index);
        else if (u < 0.7) next = OmegaPoint::infinity();
      }
      xs.push_back(next);
    }
    return xs;
  };
  s.sequences = [cap](Rng& rng) {
    FwSequences<OmegaPoint> out;
    const std::uint32_t len = std::max<std::uint32_t>(2, cap / 2);
    const std::uint32_t start = 1 + static_cast<std::uint32_t>(rng.index(cap - len + 1));
    const std::size_t pattern = rng.index(3);
    for (std::uint32_t k = 0; k < len; ++k) {
      const std::uint32_t i = start + k;
      out.xs.push_back(OmegaPoint::natural(i));
      out.ys.push_back(pattern == 0 ? OmegaPoint::omega(i) : pattern == 1 ? OmegaPoint::infinity()
                                                                          : OmegaPoint::natural(i));
      out.zs.push_back(pattern == 2 ? OmegaPoint::omega(i) : OmegaPoint::infinity());
    }
    return out;
  };
  return s;
}

FwSampler<std::size_t> finite_sampler(std::size_t points) {
  FwSampler<std::size_t> s;
  s.chain = [points](Rng& rng) {
    const std::size_t len = 2 + rng.index(11);
    std::vector<std::size_t> xs;
    for (std::size_t k = 0; k < len; ++k) xs.push_back(rng.index(points));
    return xs;
  };
  s.sequences = [points](Rng& rng) {
    const std::size_t len = 32;
    const std::size_t a = rng.index(points);
    const std::size_t b = rng.coin() ? a : rng.index(points);
    const std::size_t c = rng.coin() ? a : rng.index(points);
    FwSequences<std::size_t> out;
    for (std::size_t k = 0; k < len; ++k) {
      const bool early = k < len / 4;
      out.xs.push_back(early ? rng.index(points) : a);
      out.ys.push_back(early ? rng.index(points) : b);
      out.zs.push_back(early ? rng.index(points) : c);
    }
    out.zs.front() = c;
    return out;
  };
  return s;
}

FwSampler<std::vector<double>> vector_sampler(std::vector<FwSampler<double>> factors) {
  FwSampler<std::vector<double>> s;
  s.chain = [factors](Rng& rng) {
    std::vector<std::vector<double>> per;
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (const auto& f : factors) {
      per.push_back(f.chain(rng));
      len = std::min(len, per.back().size());
    }
    std::vector<std::vector<double>> out(len, std::vector<double>(factors.size()));
    for (std::size_t k = 0; k < len; ++k)
      for (std::size_t i = 0; i < factors.size(); ++i) out[k][i] = per[i][k];
    return out;
  };
  s.sequences = [factors](Rng& rng) {
    std::vector<FwSequences<double>> per;
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (const auto& f : factors) {
      per.push_back(f.sequences(rng));
      len = std::min({len, per.back().xs.size(), per.back().ys.size(), per.back().zs.size()});
    }
    FwSequences<std::vector<double>> out;
    for (std::size_t k = 0; k < len; ++k) {
      std::vector<double> x, y, z;
      for (const auto& p : per) {
        x.push_back(p.xs[k]);
        y.push_back(p.ys[k]);
        z.push_back(p.zs[k]);
      }
      out.xs.push_back(std::move(x));
      out.ys.push_back(std::move(y));
      out.zs.push_back(std::move(z));
    }
    return out;
  };
  return s;
}

std::vector<MTrace<double>> real_null_battery(std::size_t length) {
  std::vector<std::function<double(std::size_t)>> gens{
      [](std::size_t n) { return 1.0 / static_cast<double>(n + 1); },
      [](std::size_t n) { return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 1000))); },
      [](std::size_t n) { return 1.0 / std::pow(static_cast<double>(n + 1), 2); },
      [](std::size_t) { return 0.0; },
      [](std::size_t) { return 0.5; },
      [](std::size_t n) { return n % 2 == 0 ? 1.0 / static_cast<double>(n + 1) : 1.0; },
      [](std::size_t n) { return 0.1 + 0.05 * std::sin(static_cast<double>(n)); },
      [](std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(n + 1)); },
  };
  std::vector<MTrace<double>> out;
  for (const auto& g : gens) {
    std::vector<double> xs(length);
    for (std::size_t n = 0; n < length; ++n) xs[n] = g(n);
    out.emplace_back(std::move(xs), length);
  }
  return out;
}

UniformSpace euclidean_uniform(std::size_t points, std::uint64_t seed) {
  Rng rng(seed);
  return make_uniform_from_pseudometric(euclidean_matrix(random_unit_square(points, rng)),
                                        {1.0, 0.5, 0.25, 0.125});
}

// ---------------------------------------------------------------------------
// Lookup.

namespace {

template <class X, class M>
SpaceEntry make_entry(const std::string& name, DistanceSpace<X, M> space, std::function<std::vector<X>(Rng&)> points,
                      std::function<std::vector<M>(Rng&)> elements, FwSampler<X> sampler, bool finite) {
  SpaceEntry e;
  e.name = name;
  e.description = space.description;
  e.kind = to_string(space.kind);
  e.axioms = [space, points, elements](std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    Rng mrng = rng.split(1);
    Rng srng = rng.split(2);
    ValidationReport out;
    merge(out, validate_monoid(space.monoid, elements(mrng), trials, mrng), "monoid/");
    merge(out, validate_ladder(space.monoid, space.ladder), "ladder/");
    merge(out, validate_space(space, points(srng), trials, srng), "space/");
    return out;
  };
  e.triangle = [space, points, finite](std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    const auto pts = points(rng);
    return check_triangle(space, finite ? all_triples(pts) : random_triples(pts, trials, rng));
  };
  e.falsify = [space, sampler](FwLevel level, std::size_t trials,
                               std::uint64_t seed) -> std::optional<std::string> {
    auto ce = falsify_frechet_wilson(space, level, sampler, trials, seed);
    if (!ce) return std::nullopt;
    return ce->record;
  };
  return e;
}

struct RealFactor {
  DistanceSpace<double, double> space;
  bool nonnegative;
};

RealFactor real_factor(const std::string& name) {
  if (name == "real_abs") return {real_abs(), false};
  if (name == "snowflake") return {snowflake(), false};
  if (name == "squared") return {squared(), false};
  if (name == "dislocated_max") return {dislocated_max(), true};
  throw PreconditionError(fmt::format("unknown real space '{}'", name));
}

std::vector<double> nonneg_elements(Rng& rng) {
  auto xs = real_samples(rng, 64, true);
  xs.push_back(0.0);
  return xs;
}

std::function<std::vector<std::vector<double>>(Rng&)> tuples(std::size_t dim, std::vector<bool> nonneg,
                                                             std::size_t count) {
  return [dim, nonneg, count](Rng& rng) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> v;
      for (std::size_t k = 0; k < dim; ++k) v.push_back(real_samples(rng, 1, nonneg[k]).front());
      out.push_back(std::move(v));
    }
    return out;
  };
}

}  // namespace

SpaceEntry lookup_space(const std::string& name, std::uint64_t seed) {
  const auto brace = name.find('{');
  const std::string head = name.substr(0, brace);
  std::vector<std::string> args;
  if (brace != std::string::npos) {
    if (name.back() != '}') throw PreconditionError(fmt::format("malformed space name '{}'", name));
    args = split_args(name.substr(brace + 1, name.size() - brace - 2));
  }

  if (head == "real_abs" || head == "snowflake" || head == "squared" || head == "dislocated_max") {
    if (brace != std::string::npos) throw PreconditionError(fmt::format("'{}' takes no arguments", head));
    auto f = real_factor(head);
    const bool nn = f.nonnegative;
    return make_entry<double, double>(
        name, f.space, [nn](Rng& rng) { return real_samples(rng, 64, nn); }, nonneg_elements,
        real_line_sampler(nn), false);
  }
  if (head == "omega_counterexample") {
    if (args.size() != 1) throw PreconditionError("omega_counterexample{N} needs one argument");
    const std::size_t n = parse_count(args[0], "omega_counterexample");
    return make_entry<OmegaPoint, double>(
        name, omega_counterexample(n), [n](Rng&) { return omega_carrier(n); }, nonneg_elements, omega_sampler(n),
        n <= 64);
  }
  if (head == "uniform_pseudometric") {
    if (args.size() != 1) throw PreconditionError("uniform_pseudometric{points} needs one argument");
    const std::size_t n = parse_count(args[0], "uniform_pseudometric");
    auto u = euclidean_uniform(n, seed);
    std::vector<Relation> base = u.base;
    return make_entry<std::size_t, Relation>(
        name, u.space,
        [n](Rng&) {
          std::vector<std::size_t> pts(n);
          for (std::size_t i = 0; i < n; ++i) pts[i] = i;
          return pts;
        },
        [n, base](Rng& rng) {
          std::vector<Relation> rs = base;
          rs.push_back(Relation::diagonal(n));
          rs.push_back(Relation::full(n));
          for (int i = 0; i < 16; ++i) rs.push_back(random_reflexive_relation(n, 0.2, rng));
          return rs;
        },
        finite_sampler(n), true);
  }
  if (head == "gauge") {
    if (args.size() != 1) throw PreconditionError("gauge{dim} needs one argument");
    const std::size_t dim = parse_count(args[0], "gauge");
    std::vector<DistanceSpace<std::vector<double>, double>> family;
    for (std::size_t i = 0; i < dim; ++i) {
      family.push_back(DistanceSpace<std::vector<double>, double>{
          fmt::format("coord{}", i),
          [i](const std::vector<double>& x, const std::vector<double>& y) { return std::fabs(x[i] - y[i]); },
          dim == 1 ? SpaceKind::distance : SpaceKind::pseudo, real_nonneg(), default_real_ladder(),
          [](const std::vector<double>& x) {
            std::string s = "(";
            for (std::size_t k = 0; k < x.size(); ++k) s += (k ? ", " : "") + format_real(x[k]);
            return s + ")";
          },
          true, true});
    }
    Rng rng(seed);
    auto pts = tuples(dim, std::vector<bool>(dim, false), 64)(rng);
    auto space = gauge_space(family, pts);
    return make_entry<std::vector<double>, std::vector<double>>(
        name, space, tuples(dim, std::vector<bool>(dim, false), 64), tuples(dim, std::vector<bool>(dim, true), 64),
        vector_sampler(std::vector<FwSampler<double>>(dim, real_line_sampler(false))), false);
  }
  if (head == "product") {
    if (args.size() < 2) throw PreconditionError("product{mode,space,...} needs a mode and at least one space");
    const std::string mode = args[0];
    std::vector<DistanceSpace<double, double>> factors;
    std::vector<bool> nonneg;
    std::vector<FwSampler<double>> samplers;
    for (std::size_t i = 1; i < args.size(); ++i) {
      auto f = real_factor(args[i]);
      factors.push_back(f.space);
      nonneg.push_back(f.nonnegative);
      samplers.push_back(real_line_sampler(f.nonnegative));
    }
    const std::size_t dim = factors.size();
    if (mode == "sigma" || mode == "vee") {
      auto space = product_space(factors, mode == "sigma" ? ProductMode::sigma : ProductMode::vee);
      return make_entry<std::vector<double>, double>(name, space, tuples(dim, nonneg, 64), nonneg_elements,
                                                     vector_sampler(samplers), false);
    }
    if (mode == "coordinatewise") {
      auto space = coordinatewise_product(factors);
      return make_entry<std::vector<double>, std::vector<double>>(name, space, tuples(dim, nonneg, 64),
                                                                  tuples(dim, std::vector<bool>(dim, true), 64),
                                                                  vector_sampler(samplers), false);
    }
    throw PreconditionError(fmt::format("unknown product mode '{}'", mode));
  }
  throw PreconditionError(fmt::format("unknown space '{}'", name));
}

std::vector<std::string> space_names() {
  return {"real_abs",
          "snowflake",
          "squared",
          "dislocated_max",
          "omega_counterexample{50}",
          "product{sigma,real_abs,real_abs}",
          "product{vee,real_abs,real_abs}",
          "product{coordinatewise,real_abs,real_abs}",
          "gauge{2}",
          "uniform_pseudometric{8}"};
}

}  // namespace pomfix::catalog
