#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pomfix/catalog.hpp"
#include "pomfix/multifix.hpp"

using namespace pomfix;

namespace {

using V = std::vector<double>;
using Opts = SequentialOptions<Profile<double>, V>;

const std::function<bool(const double&, const double&)> leq = [](const double& a, const double& b) { return a <= b; };

DistanceSpace<double, double> fine_real() {
  auto s = catalog::real_abs();
  s.ladder = dyadic_ladder(0, 24);
  return s;
}

LambdaSequence<V> mixing_lambda(double a, double b) {
  return constant_lambda<V>([a, b](const V& d) { return V{a * d[0] + b * d[1], b * d[0] + a * d[1]}; }, "mixing");
}

Opts slack_opts() {
  Opts o;
  o.step_slack = V{1e-12, 1e-12};
  return o;
}

SigmaSpec random_sigma(std::size_t n, Rng& rng) {
  std::vector<std::size_t> table(n * n);
  for (auto& t : table) t = rng.index(n);
  SigmaSpec s;
  s.size = n;
  s.sigma = [table, n](std::size_t a, std::size_t b) { return table[a * n + b]; };
  for (std::size_t a = 0; a < n; ++a) s.p.push_back(rng.coin() ? 1 : 0);
  return s;
}

}  // namespace

TEST_SUITE("multifix") {
  TEST_CASE("sigma_lift examples") {
    const std::function<double(const Profile<double>&)> f = [](const Profile<double>& p) {
      return 10 * p[0] + p[1];
    };
    const auto coupled = sigma_lift<double>(coupled_sigma(), f);
    CHECK(coupled({1, 2}) == Profile<double>{12, 21});

    SigmaSpec ident{2, [](std::size_t, std::size_t b) { return b; }, {0, 0}};
    CHECK(sigma_lift<double>(ident, f)({1, 2}) == Profile<double>{12, 12});

    SigmaSpec one{1, [](std::size_t, std::size_t) { return std::size_t{0}; }, {0}};
    const std::function<double(const Profile<double>&)> g = [](const Profile<double>& p) { return p[0] / 2 + 1; };
    CHECK(sigma_lift<double>(one, g)({6}) == Profile<double>{4});

    CHECK_THROWS_AS(coupled({1, 2, 3}), PreconditionError);
    SigmaSpec bad{2, [](std::size_t, std::size_t) { return std::size_t{5}; }, {0, 1}};
    CHECK_THROWS_AS(sigma_lift<double>(bad, f), PreconditionError);
    SigmaSpec short_p{2, [](std::size_t, std::size_t b) { return b; }, {0}};
    CHECK_THROWS_AS(short_p.validate(), PreconditionError);
  }

  TEST_CASE("property: sigma_lift matches the definition exhaustively") {
    Rng rng(3);
    const std::vector<double> ys = {-3, -1, 0, 0.5, 1, 2, 4, 7};
    const std::function<double(const Profile<double>&)> f = [](const Profile<double>& p) {
      double acc = 0;
      for (std::size_t i = 0; i < p.size(); ++i) acc += static_cast<double>(i + 1) * p[i] + 0.1 * p[i] * p[i];
      return acc;
    };
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int t = 0; t < 20; ++t) {
        const auto s = random_sigma(n, rng);
        const auto lift = sigma_lift<double>(s, f);
        // every profile over ys for n <= 2, random profiles beyond
        const std::size_t count = n <= 2 ? static_cast<std::size_t>(std::pow(ys.size(), n)) : 256;
        for (std::size_t c = 0; c < count; ++c) {
          Profile<double> x(n);
          std::size_t code = c;
          for (std::size_t a = 0; a < n; ++a) {
            x[a] = n <= 2 ? ys[code % ys.size()] : ys[rng.index(ys.size())];
            code /= ys.size();
          }
          const auto y = lift(x);
          for (std::size_t a = 0; a < n; ++a) {
            Profile<double> r(n);
            for (std::size_t b = 0; b < n; ++b) r[b] = x[s.sigma(a, b)];
            REQUIRE(y[a] == f(r));
          }
        }
      }
    }
  }

  TEST_CASE("p_order_leq") {
    const auto s = coupled_sigma();
    CHECK(p_order_leq<double>(s, {1, 5}, {2, 3}, leq));
    CHECK_FALSE(p_order_leq<double>(s, {2, 3}, {1, 5}, leq));
    SigmaSpec zero{2, [](std::size_t, std::size_t b) { return b; }, {0, 0}};
    CHECK(p_order_leq<double>(zero, {1, 2}, {1, 3}, leq));
    CHECK_FALSE(p_order_leq<double>(zero, {1, 5}, {2, 3}, leq));
    CHECK(p_order_leq<double>(s, {4, 4}, {4, 4}, leq));
  }

  TEST_CASE("property: p_order_leq is a partial order") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const auto s = random_sigma(1 + rng.index(4), rng);
      std::vector<Profile<double>> pts;
      for (int i = 0; i < 12; ++i) {
        Profile<double> x(s.size);
        for (auto& v : x) v = static_cast<double>(rng.index(3));
        pts.push_back(x);
      }
      for (const auto& x : pts) {
        REQUIRE(p_order_leq(s, x, x, leq));
        for (const auto& y : pts) {
          if (p_order_leq(s, x, y, leq) && p_order_leq(s, y, x, leq)) REQUIRE(x == y);
          for (const auto& z : pts)
            if (p_order_leq(s, x, y, leq) && p_order_leq(s, y, z, leq)) REQUIRE(p_order_leq(s, x, z, leq));
        }
      }
    }
  }

  TEST_CASE("coupled linear fixed point") {
    const std::function<double(const double&, const double&)> f = [](const double& u, const double& v) {
      return 0.3 * u - 0.2 * v + 1;
    };
    const auto rep = coupled_fixed_point<double, double>(fine_real(), f, leq, -2.0, 10.0, mixing_lambda(0.3, 0.2),
                                                        slack_opts());
    REQUIRE(rep.certified());
    // x = 0.3x - 0.2y + 1, y = 0.3y - 0.2x + 1
    const auto sol = oracle::solve_linear({{0.7, 0.2}, {0.2, 0.7}}, {1, 1});
    CHECK(std::fabs((*rep.fixed_point)[0] - sol[0]) < 1e-6);
    CHECK(std::fabs((*rep.fixed_point)[1] - sol[1]) < 1e-6);
    CHECK(std::fabs(sol[0] - 10.0 / 9) < 1e-12);
    // the P-ordered chain is monotone at every step
    for (std::size_t k = 0; k + 1 < rep.trace.points.size(); ++k)
      REQUIRE(p_order_leq(coupled_sigma(), rep.trace.points[k], rep.trace.points[k + 1], leq));

    // (0, 10) is not below its image in the P-order: f(0, 10) = -1 < 0
    const auto bad = coupled_fixed_point<double, double>(fine_real(), f, leq, 0.0, 10.0, mixing_lambda(0.3, 0.2),
                                                        slack_opts());
    CHECK(bad.status == SolveStatus::hypothesis_violated);
    CHECK(bad.violation->which == "seed-order");
  }

  TEST_CASE("constant map fixes (c, c) in one step") {
    const std::function<double(const double&, const double&)> f = [](const double&, const double&) { return 3.0; };
    const auto rep =
        coupled_fixed_point<double, double>(fine_real(), f, leq, 1.0, 5.0, mixing_lambda(0.25, 0.25), slack_opts());
    REQUIRE(rep.certified());
    CHECK(*rep.fixed_point == Profile<double>{3, 3});
    CHECK(rep.trace.points[1] == Profile<double>{3, 3});
  }

  TEST_CASE("projection: every profile is fixed") {
    const std::function<double(const double&, const double&)> f = [](const double& u, const double&) { return u; };
    for (const auto& seed : std::vector<Profile<double>>{{2, 2}, {1, 7}}) {
      const auto rep = coupled_fixed_point<double, double>(fine_real(), f, leq, seed[0], seed[1],
                                                          mixing_lambda(0.5, 0), slack_opts());
      REQUIRE(rep.certified());
      CHECK(rep.iterations == 0);
      CHECK(*rep.fixed_point == seed);
    }
  }

  TEST_CASE("property: certified profiles satisfy the fixed-profile equation") {
    Rng rng(9);
    for (int t = 0; t < 40; ++t) {
      const double a = rng.uniform(0.05, 0.4);
      const double b = rng.uniform(0.0, 0.4);
      const double c = rng.uniform(-2, 2);
      const std::function<double(const double&, const double&)> f = [a, b, c](const double& u, const double& v) {
        return a * u - b * v + c;
      };
      // fixed point c / (1 - a + b) in both slots; a symmetric offset keeps
      // the seed below its image in the P-order
      const double xbar = c / (1 - a + b);
      const double off = rng.uniform(1, 5);
      const auto rep = coupled_fixed_point<double, double>(fine_real(), f, leq, xbar - off, xbar + off,
                                                          mixing_lambda(a, b), slack_opts());
      CAPTURE(rep.status);
      REQUIRE(rep.certified());
      const auto& x = *rep.fixed_point;
      CHECK(std::fabs(x[0] - f(x[0], x[1])) < std::ldexp(1.0, -24));
      CHECK(std::fabs(x[1] - f(x[1], x[0])) < std::ldexp(1.0, -24));
    }
  }

  TEST_CASE("preconditions") {
    const std::function<double(const Profile<double>&)> g = [](const Profile<double>& p) { return p[0]; };
    auto solve = [&](const DistanceSpace<double, double>& sp, const Profile<double>& x0) {
      return solve_multiple_fixed_point<double, double>(sp, coupled_sigma(), g, leq, x0, mixing_lambda(0.5, 0));
    };
    auto sp = fine_real();
    sp.co_regular = false;
    CHECK_THROWS_AS(solve(sp, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(solve(fine_real(), {0, 0, 0}), PreconditionError);
  }
}
