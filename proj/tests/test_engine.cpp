#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pomfix/catalog.hpp"
#include "pomfix/engine.hpp"

using namespace pomfix;

namespace {

using Space = DistanceSpace<double, double>;
using Report = SolveReport<double, double>;

Space fine_real() {
  auto s = catalog::real_abs();
  s.ladder = dyadic_ladder(0, 24);
  return s;
}

MapSpec<double> affine(double slope, double shift) {
  MapSpec<double> f;
  f.apply = [slope, shift](const double& x) { return slope * x + shift; };
  f.order_leq = [](const double& a, const double& b) { return a <= b; };
  f.point_sup = [](const double& a, const double& b) { return std::max(a, b); };
  return f;
}

MeirKeelerData<double, double> mk_half_rung() {
  MeirKeelerData<double, double> mk;
  mk.delta_of = [](const double& e) { return e / 2; };
  mk.zeta = [](const double& a, const double& b) { return a + b; };
  mk.midpoint = [](const double& x, const double& y, const double& a, const double& b) -> std::optional<double> {
    return x + (y - x) * a / (a + b);
  };
  return mk;
}

std::vector<std::pair<double, double>> dyadic_pairs(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> out;
  auto q = [](double v) { return std::ldexp(std::round(std::ldexp(v, 30)), -30); };
  for (std::size_t i = 0; i < n; ++i) {
    const double x = q(rng.uniform(-4, 4));
    out.emplace_back(x, q(x + rng.uniform(-2, 2)));
  }
  return out;
}

LambdaSequence<double> ratio_lambda(int power) {
  return LambdaSequence<double>{[power](std::size_t n, const double& t) {
                                  const double r = static_cast<double>(n) / static_cast<double>(n + 1);
                                  return std::pow(r, power) * t;
                                },
                                false, "ratio"};
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("picard_iterate") {
    const auto sp = fine_real();
    const auto tr = picard_iterate(sp, affine(0.5, 1), 0.0, {60, 3});
    for (std::size_t n = 0; n < tr.points.size(); ++n) {
      CHECK(tr.points[n] == doctest::Approx(2 * (1 - std::ldexp(1.0, -static_cast<int>(n)))).epsilon(1e-15));
    }
    CHECK(tr.consec.size() == tr.points.size() - 1);
    CHECK(std::fabs(tr.points.back() - 2) < sp.ladder.bottom());

    MapSpec<double> id;
    id.apply = [](const double& x) { return x; };
    const auto ti = picard_iterate(sp, id, 3.0);
    CHECK(ti.points == std::vector<double>{3.0, 3.0});
    CHECK(ti.consec.elements == std::vector<double>{0.0});

    const auto tu = picard_iterate(sp, affine(1, 1), 0.0, {10, 3});
    CHECK(tu.points.size() == 11);
    CHECK_FALSE(tu.stopped_early);
    CHECK_THROWS_AS(picard_iterate(sp, affine(1, 1), 0.0, {0, 3}), PreconditionError);
  }

  TEST_CASE("picard_iterate: stop needs the full confirmation window") {
    auto sp = catalog::real_abs();
    const auto tr = picard_iterate(sp, affine(0.5, 0), 1.0, {100, 5});
    // consec = 2^-(k+1); below 1/16 from k = 4; five in a row end at k = 8
    CHECK(tr.points.size() == 10);
    CHECK(tr.stopped_early);
  }

  TEST_CASE("verify_fixed_point") {
    const auto sp = catalog::real_abs();
    auto [r, ok] = verify_fixed_point(sp, affine(0.5, 1), 2.0);
    CHECK(r == 0.0);
    CHECK(ok);
    auto [r2, ok2] = verify_fixed_point(sp, affine(0.5, 1), 2.1);
    CHECK(r2 == doctest::Approx(0.05));
    CHECK(ok2);  // 0.05 < 1/16
    auto [r3, ok3] = verify_fixed_point(fine_real(), affine(0.5, 1), 2.1);
    CHECK_FALSE(ok3);
    MapSpec<double> id;
    id.apply = [](const double& x) { return x; };
    auto [r4, ok4] = verify_fixed_point(catalog::dislocated_max(), id, 3.0);
    CHECK(r4 == 3.0);
    CHECK_FALSE(ok4);
  }

  TEST_CASE("meir-keeler") {
    const auto sp = fine_real();
    const auto pairs = dyadic_pairs(256, 7);
    const auto rep = solve_meir_keeler(sp, affine(0.5, 0), mk_half_rung(), 8.0, pairs);
    CHECK(rep.certified());
    CHECK(std::fabs(*rep.fixed_point) < std::ldexp(1.0, -20));
    CHECK(*rep.residual < sp.ladder.bottom());

    const auto up = solve_meir_keeler(sp, affine(1, 1), mk_half_rung(), 0.0, pairs);
    CHECK(up.status == SolveStatus::hypothesis_violated);
    CHECK(up.violation->which == "meir-keeler-condition");

    const std::vector<std::pair<double, double>> at_eps = {{0.0, 1.0}};
    MapSpec<double> id;
    id.apply = [](const double& x) { return x; };
    const auto idr = solve_meir_keeler(sp, id, mk_half_rung(), 5.0, at_eps);
    CHECK(idr.status == SolveStatus::hypothesis_violated);
    CHECK(idr.violation->witness.find("x=0 y=1") != std::string::npos);
  }

  TEST_CASE("meir-keeler: bad zeta data is rejected before iterating") {
    const auto sp = fine_real();
    auto mk = mk_half_rung();
    mk.zeta = [](const double& a, const double& b) { return std::min(a, b); };
    const auto rep = solve_meir_keeler(sp, affine(0.5, 0), mk, 1.0, dyadic_pairs(8, 1));
    CHECK(rep.status == SolveStatus::hypothesis_violated);
    CHECK(rep.violation->which == "zeta-dominates-rungs");
    CHECK(rep.trace.points.empty());

    // squared distance breaks the plain triangle on (0, 1, 2)
    auto sq = catalog::squared();
    sq.ladder = dyadic_ladder(0, 24);
    const auto r2 = solve_meir_keeler(sq, affine(0.5, 0), mk_half_rung(), 1.0, {{0.0, 2.0}, {1.0, 1.0}});
    CHECK(r2.violation->which == "zeta-triangle");
  }

  TEST_CASE("property: certified meir-keeler maps do not expand sampled rung balls") {
    const auto sp = fine_real();
    Rng rng(21);
    for (int t = 0; t < 40; ++t) {
      // δ = ε/2 admits d <= 3ε/2, so slopes below 2/3
      const double c = std::ldexp(std::round(rng.uniform(0, 0.66) * 64), -6);
      const auto f = affine(c, std::round(rng.uniform(-8, 8)));
      const auto pairs = dyadic_pairs(128, 100 + t);
      const auto rep = solve_meir_keeler(sp, f, mk_half_rung(), 1.0, pairs);
      REQUIRE(rep.certified());
      for (const auto& eps : sp.ladder.rungs())
        for (const auto& [x, y] : pairs)
          if (std::fabs(x - y) < eps) REQUIRE(std::fabs(f.apply(x) - f.apply(y)) < eps);
    }
  }

  TEST_CASE("caristi") {
    auto sp = fine_real();
    CaristiData<double, double> cd{[](const double& x) { return 2 * std::fabs(x); }, [](const double& t) { return t; }};
    const auto rep = solve_caristi(sp, affine(0.5, 0), cd, 1.0);
    CHECK(rep.certified());
    CHECK(std::fabs(*rep.fixed_point) < std::ldexp(1.0, -20));

    CaristiData<double, double> weak{[](const double& x) { return std::fabs(x) / 4; }, cd.eta};
    const auto bad = solve_caristi(sp, affine(0.5, 0), weak, 1.0);
    CHECK(bad.status == SolveStatus::hypothesis_violated);
    CHECK(bad.violation->step == 0);
    CHECK(bad.violation->which == "caristi-inequality");

    const auto fixed = solve_caristi(sp, affine(0.5, 0), cd, 0.0);
    CHECK(fixed.certified());
    CHECK(fixed.iterations == 0);
    CHECK(*fixed.residual == 0.0);
  }

  TEST_CASE("caristi refuses a monoid not declared Weierstrass") {
    auto sp = fine_real();
    sp.monoid.weierstrass = false;
    CaristiData<double, double> cd{[](const double& x) { return 2 * std::fabs(x); }, [](const double& t) { return t; }};
    CHECK_THROWS_AS(solve_caristi(sp, affine(0.5, 0), cd, 1.0), PreconditionError);
  }

  TEST_CASE("lambda_product_trace") {
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    const auto tr = lambda_product_trace(half, 1.0, 10);
    for (std::size_t n = 0; n < 10; ++n) CHECK(tr.elements[n] == std::ldexp(1.0, -static_cast<int>(n) - 1));
    const auto one = lambda_product_trace(ratio_lambda(1), 1.0, 200);
    const auto two = lambda_product_trace(ratio_lambda(2), 1.0, 200);
    for (std::size_t n = 1; n <= 200; ++n) {
      CHECK(one.elements[n - 1] == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
      CHECK(two.elements[n - 1] == doctest::Approx(1.0 / ((n + 1.0) * (n + 1.0))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lambda_product_trace(half, 1.0, 0), PreconditionError);
  }

  TEST_CASE("lambda_product_trace applies lambda_1 last") {
    // λ_n(t) = n t + 1: λ_1(λ_2(0)) = 2, the reverse order gives 3
    LambdaSequence<double> lam{[](std::size_t n, const double& t) { return static_cast<double>(n) * t + 1; }, false,
                               "affine"};
    const auto tr = lambda_product_trace(lam, 0.0, 3);
    CHECK(tr.elements[0] == 1.0);
    CHECK(tr.elements[1] == 2.0);
    // λ_1(λ_2(λ_3(0))) = 1·(2·(3·0 + 1) + 1) + 1 = 4
    CHECK(tr.elements[2] == 4.0);
  }

  TEST_CASE("set I versus set II: null but not a Cauchy series") {
    const auto sp = catalog::real_abs();
    const auto one = lambda_product_trace(ratio_lambda(1), 1.0, 10000);
    CHECK(is_null_trace(one, sp.ladder, sp.monoid).decision == Decision::holds);
    const auto v1 = cauchy_series_check(one, sp.ladder, sp.monoid);
    CHECK(v1.decision == Decision::fails_within);
    // harmonic window oracle: Σ_{k=n+2}^{10001} 1/k at the reported settle index is >= 1/16
    REQUIRE(v1.last_violation.has_value());
    CHECK(oracle::harmonic_window(*v1.last_violation + 2, 10001) >= 1.0 / 16);
    const auto two = lambda_product_trace(ratio_lambda(2), 1.0, 10000);
    CHECK(cauchy_series_check(two, sp.ladder, sp.monoid).decision == Decision::holds);
  }

  TEST_CASE("sequential driver") {
    const auto sp = fine_real();
    SequentialOptions<double, double> opt;
    opt.solve.budget = 200;
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    const auto rep = solve_sequential(sp, affine(0.5, 0), half, 4.0, opt);
    CHECK(rep.certified());
    CHECK(std::fabs(*rep.fixed_point) < std::ldexp(1.0, -20));

    // a slower map than the declared λ is caught at the first step
    const auto slow = solve_sequential(sp, affine(0.75, 0), half, 4.0, opt);
    CHECK(slow.status == SolveStatus::hypothesis_violated);
    CHECK(slow.violation->step == 1);

    // series mode with λ_n = n/(n+1): premise check fails within budget
    SequentialOptions<double, double> big;
    big.solve.budget = 10000;
    auto coarse = catalog::real_abs();
    const auto harmonic = solve_sequential(coarse, affine(0.5, 0), ratio_lambda(1), 1.0, big);
    CHECK(harmonic.status == SolveStatus::budget_exhausted);
    CHECK_FALSE(harmonic.fixed_point.has_value());
    // x/4 meets d_{k+1} <= (k/(k+1))^2 d_k from k = 1 on
    const auto square = solve_sequential(coarse, affine(0.25, 0), ratio_lambda(2), 1.0, big);
    CHECK(square.certified());

    // set I with the same λ: orbit bounded and the product trace null
    big.mode = SequentialMode::orbit_bounded;
    const auto setI = solve_sequential(coarse, affine(0.5, 0), ratio_lambda(1), 1.0, big);
    CHECK(setI.certified());
  }

  TEST_CASE("sequential uniqueness probe") {
    const auto sp = fine_real();
    SequentialOptions<double, double> opt;
    opt.second_seed = -3.0;
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    const auto rep = solve_sequential(sp, affine(0.5, 1), half, 4.0, opt);
    REQUIRE(rep.certified());
    bool agree = false;
    for (const auto& d : rep.diagnostics) agree |= d.find("limits agree") != std::string::npos;
    CHECK(agree);
  }

  TEST_CASE("property: affine consec trace is dominated by the shifted product trace") {
    Rng rng(31);
    const auto sp = catalog::real_abs();
    for (int t = 0; t < 200; ++t) {
      const double c = rng.uniform(0.05, 0.95);
      const double b = rng.uniform(-3, 3);
      const double x0 = rng.uniform(-10, 10);
      const auto f = affine(c, b);
      const auto tr = picard_iterate(sp, f, x0, {40, 1000});
      const auto lam = constant_lambda<double>([c](const double& s) { return c * s; });
      const auto prod = lambda_product_trace(lam, tr.consec.elements.front(), tr.consec.size());
      for (std::size_t k = 1; k < tr.consec.size(); ++k) {
        REQUIRE(tr.consec.elements[k] <= prod.elements[k - 1] * (1 + 1e-9) + 1e-15);
      }
    }
  }

  TEST_CASE("monotone driver") {
    auto sp = fine_real();
    SequentialOptions<double, double> opt;
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    const auto rep = solve_monotone(sp, affine(0.5, 1), half, 0.0, opt);
    CHECK(rep.certified());
    CHECK(*rep.fixed_point == doctest::Approx(2.0).epsilon(1e-6));
    const auto above = solve_monotone(sp, affine(0.5, 1), half, 5.0, opt);
    CHECK(above.status == SolveStatus::hypothesis_violated);
    CHECK(above.violation->step == 0);
    CHECK(above.violation->which == "seed-order");
    MapSpec<double> id = affine(1, 0);
    const auto idr = solve_monotone(sp, id, half, 7.0, opt);
    CHECK(idr.certified());
    CHECK(idr.iterations == 0);

    MapSpec<double> unordered;
    unordered.apply = [](const double& x) { return x / 2; };
    CHECK_THROWS_AS(solve_monotone(sp, unordered, half, -1.0, opt), PreconditionError);
    sp.regular = false;
    CHECK_THROWS_AS(solve_monotone(sp, affine(0.5, 0), half, -1.0, opt), PreconditionError);
  }

  TEST_CASE("monotone driver catches a chain that turns around") {
    const auto sp = fine_real();
    MapSpec<double> f = affine(1, 0);
    f.apply = [](const double& x) { return x < 1 ? x + 1 : 0.5; };
    const auto half = constant_lambda<double>([](const double& t) { return 4 * t; });
    SequentialOptions<double, double> opt;
    opt.mode = SequentialMode::orbit_bounded;
    opt.n_max = 4;
    const auto rep = solve_monotone(sp, f, half, 0.0, opt);
    CHECK(rep.status == SolveStatus::hypothesis_violated);
  }

  TEST_CASE("property: certified monotone runs have ordered chains") {
    Rng rng(41);
    const auto sp = fine_real();
    const auto lam = constant_lambda<double>([](const double& t) { return 0.9 * t; });
    SequentialOptions<double, double> opt;
    opt.solve.budget = 2000;
    int certified = 0;
    for (int t = 0; t < 50; ++t) {
      const double c = rng.uniform(0.1, 0.9);
      const double b = rng.uniform(-2, 2);
      const double x0 = b / (1 - c) - rng.uniform(0.1, 5);
      const auto rep = solve_monotone(sp, affine(c, b), lam, x0, opt);
      if (!rep.certified()) continue;
      ++certified;
      for (std::size_t k = 0; k + 1 < rep.trace.points.size(); ++k)
        REQUIRE(rep.trace.points[k] <= rep.trace.points[k + 1]);
    }
    CHECK(certified == 50);
  }

  TEST_CASE("driver agreement on x/2") {
    const auto sp = fine_real();
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    SequentialOptions<double, double> opt;
    CaristiData<double, double> cd{[](const double& x) { return 2 * std::fabs(x); }, [](const double& t) { return t; }};
    std::vector<Report> reps = {
        solve_meir_keeler(sp, affine(0.5, 0), mk_half_rung(), 8.0, dyadic_pairs(256, 7)),
        solve_caristi(sp, affine(0.5, 0), cd, 8.0),
        solve_sequential(sp, affine(0.5, 0), half, 8.0, opt),
        solve_monotone(sp, affine(0.5, 0), half, -8.0, opt),
    };
    for (const auto& r : reps) {
      CAPTURE(r.driver);
      REQUIRE(r.certified());
      CHECK(std::fabs(*r.fixed_point) <= std::ldexp(1.0, -20));
      CHECK(*r.residual < sp.ladder.bottom());
      CHECK(verify_fixed_point(sp, affine(0.5, 0), *r.fixed_point).second);
      for (const auto& s : reps) CHECK(std::fabs(*r.fixed_point - *s.fixed_point) < sp.ladder.bottom());
    }
  }

  TEST_CASE("solve_parametrized") {
    const auto sp = fine_real();
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    std::function<double(const double&, const double&)> family = [](const double& w, const double& x) {
      return w > 5 ? 2 * x + 1 : x / 2 + w;
    };
    std::function<Report(const double&, const MapSpec<double>&)> solver = [&](const double&,
                                                                                const MapSpec<double>& f) {
      return solve_sequential(sp, f, half, 0.0, SequentialOptions<double, double>{});
    };
    std::function<bool(const std::vector<double>&, const std::vector<std::optional<double>>&)> monotone_in_w =
        [](const std::vector<double>& ws, const std::vector<std::optional<double>>& xs) {
          for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
            if (!xs[i] || !xs[i + 1]) return false;
            if ((ws[i] < ws[i + 1]) != (*xs[i] < *xs[i + 1])) return false;
          }
          return true;
        };
    const auto res = solve_parametrized<double, double, double>(family, {0, 1, 2}, solver, monotone_in_w);
    REQUIRE(res.reports.size() == 3);
    for (int w = 0; w < 3; ++w) {
      REQUIRE(res.reports[w].certified());
      CHECK(*res.reports[w].fixed_point == doctest::Approx(2.0 * w).epsilon(1e-6));
    }
    CHECK(res.admissible == std::optional<bool>(true));

    const auto mixed = solve_parametrized<double, double, double>(family, {0, 9, 2}, solver);
    CHECK(mixed.reports[0].certified());
    CHECK(mixed.reports[1].status == SolveStatus::hypothesis_violated);
    CHECK(mixed.reports[2].certified());
    CHECK_FALSE(mixed.admissible.has_value());

    std::function<Report(const double&, const MapSpec<double>&)> throwing = [](const double& w,
                                                                                const MapSpec<double>&) -> Report {
      if (w == 1) throw PreconditionError("no");
      return Report{};
    };
    const auto iso = solve_parametrized<double, double, double>(family, {0, 1}, throwing);
    CHECK(iso.reports[1].violation->which == "solver-error");
  }

  TEST_CASE("exports") {
    const auto sp = fine_real();
    const auto half = constant_lambda<double>([](const double& t) { return t / 2; });
    const auto rep = solve_sequential(sp, affine(0.5, 0), half, 1.0, SequentialOptions<double, double>{});
    const auto csv = trace_csv(sp, rep.trace);
    CHECK(csv.rfind("index,point,consec,flags\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == rep.trace.points.size() + 1);
    const auto txt = report_text(sp, rep);
    CHECK(txt.find("status: Certified") != std::string::npos);
    CHECK(txt.find("iterations: ") != std::string::npos);
  }
}
