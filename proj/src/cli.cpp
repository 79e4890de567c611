#include "pomfix/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pomfix/catalog.hpp"
#include "pomfix/config.hpp"
#include "pomfix/engine.hpp"
#include "pomfix/expr.hpp"
#include "pomfix/fredholm.hpp"
#include "pomfix/multifix.hpp"

namespace pomfix::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string out_dir = "pomfix_out";
  std::uint64_t seed = 1;
  std::optional<std::size_t> budget;
};

class Artifacts {
 public:
  Artifacts(const std::string& dir, std::ostream& log) : dir_(dir), log_(log) {}

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir_);
    const fs::path p = fs::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("cannot write {}", p.string()));
    f << content;
    log_ << "wrote " << p.string() << "\n";
  }

 private:
  std::string dir_;
  std::ostream& log_;
};

// "key: value" lines; the record every exit-1 run leaves behind.
std::string violation_record(const std::string& command, const std::string& kind, std::size_t step,
                             const std::string& check, const std::string& witness) {
  return fmt::format("command: {}\nkind: {}\nstep: {}\ncheck: {}\nwitness: {}\n", command, kind, step, check, witness);
}

template <class X, class M>
int finish_solve(const std::string& command, const SolveReport<X, M>& rep, Artifacts& art) {
  if (rep.certified()) return exit_ok;
  if (rep.violation) {
    art.write("violation.txt", violation_record(command, to_string(rep.status), rep.violation->step,
                                                rep.violation->which, rep.violation->witness));
  } else {
    art.write("violation.txt", violation_record(command, to_string(rep.status), rep.iterations, "budget",
                                                rep.diagnostics.empty() ? "" : rep.diagnostics.back()));
  }
  return exit_violation;
}

// ---------------------------------------------------------------------------
// solve-fredholm

const std::vector<std::string> fredholm_keys = {"interval", "nodes",  "node_list",        "weight_list", "kernel",
                                                "q",        "g",      "f",                "ladder",      "budget",
                                                "n_max",    "force",  "majorant_samples", "seed"};

std::pair<int, int> ladder_exponents(const Config& c, std::pair<int, int> fallback) {
  if (!c.has("ladder")) return fallback;
  const auto v = c.reals("ladder");
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]) || v[1] < v[0]) {
    c.fail("ladder", "expected two integer exponents 'first last' with first <= last");
  }
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

Expression compile_key(const Config& c, const std::string& key, const std::vector<std::string>& vars) {
  try {
    return Expression::compile(c.str(key), vars);
  } catch (const ExpressionError& e) {
    c.fail(key, e.what());
  }
}

fredholm::Grid build_grid(const Config& c) {
  if (c.has("node_list") || c.has("weight_list")) {
    if (c.has("nodes") || c.has("interval")) c.fail("node_list", "give either interval/nodes or node_list/weight_list");
    try {
      return fredholm::Grid::custom(c.reals("node_list"), c.reals("weight_list"));
    } catch (const PreconditionError& e) {
      c.fail("node_list", e.what());
    }
  }
  const auto iv = c.reals("interval");
  if (iv.size() != 2 || !(iv[1] > iv[0])) c.fail("interval", "expected 'a b' with a < b");
  const auto m = c.count("nodes");
  if (m < 2) c.fail("nodes", "need at least two nodes");
  return fredholm::Grid::trapezoid(iv[0], iv[1], m);
}

fredholm::KernelSpec build_kernel(const Config& c) {
  const Expression fe = compile_key(c, "f", {"t"});
  auto f = [fe](double t) { return fe({t}); };
  const std::string kind = c.str("kernel");
  if (kind == "product_ts") {
    auto k = fredholm::product_ts_kernel(f);
    k.description += fmt::format(", f(t) = {}", fe.text());
    return k;
  }
  if (kind.rfind("constant{", 0) == 0 && kind.back() == '}') {
    const std::string inner = kind.substr(9, kind.size() - 10);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(inner, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != inner.size() || v < 0.0) c.fail("kernel", "constant{c} needs a number c >= 0");
    auto k = fredholm::constant_kernel(v, f);
    k.description += fmt::format(", f(t) = {}", fe.text());
    return k;
  }
  if (kind == "user_expression") {
    const Expression q = compile_key(c, "q", {"t", "s"});
    const Expression g = compile_key(c, "g", {"t", "s", "x"});
    return fredholm::KernelSpec{[q](double t, double s) { return q({t, s}); },
                                [g](double t, double s, double x) { return g({t, s, x}); }, f,
                                fmt::format("user: Q = {}, g = {}, f(t) = {}", q.text(), g.text(), fe.text())};
  }
  c.fail("kernel", fmt::format("unknown kernel '{}' (constant{{c}}, product_ts, user_expression)", kind));
}

int solve_fredholm_cmd(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err) {
  const Config c = Config::load(path);
  c.restrict_to(fredholm_keys);
  const auto grid = build_grid(c);
  const auto kernel = build_kernel(c);
  const auto [lo, hi] = ladder_exponents(c, {1, 20});
  const auto ladder = constant_dyadic_ladder(grid.size(), lo, hi);
  fredholm::FredholmOptions opt;
  opt.budget = g.budget ? *g.budget : c.count("budget", 1000);
  opt.n_max = c.count("n_max", 1000);
  opt.force = c.flag("force", false);
  opt.seed = c.count("seed", g.seed);
  opt.majorant_samples = c.count("majorant_samples", 2000);
  if (opt.n_max == 0) c.fail("n_max", "must be at least 1");

  Artifacts art(g.out_dir, err);
  std::string head = fmt::format("command: solve-fredholm\nkernel: {}\nnodes: {}\nmeasure: {}\nladder: 2^-{} .. 2^-{}\n"
                                 "budget: {}\nn_max: {}\nforce: {}\nseed: {}\n",
                                 kernel.description, grid.size(), format_real(grid.measure()), lo, hi, opt.budget,
                                 opt.n_max, opt.force, opt.seed);
  try {
    const auto res = fredholm::solve_fredholm(kernel, grid, ladder, opt);
    art.write("solution.csv", fredholm::solution_csv(grid, res.solution));
    art.write("certificate.csv", res.certificate.to_csv());
    const auto space = fredholm::grid_space(grid, ladder);
    art.write("trace.csv", trace_csv(space, res.report.trace));
    std::string text = head;
    text += fmt::format("driver: {}\nstatus: {}\niterations: {}\nresidual_sup: {}\n", res.report.driver,
                        to_string(res.report.status), res.report.iterations, format_real(res.residual));
    if (res.report.violation) {
      text += fmt::format("violation_step: {}\nviolation_check: {}\nviolation_witness: {}\n",
                          res.report.violation->step, res.report.violation->which, res.report.violation->witness);
    }
    for (const auto& d : res.report.diagnostics) text += fmt::format("diagnostic: {}\n", d);
    text += res.certificate.to_text();
    art.write("report.txt", text);
    out << text;
    return finish_solve("solve-fredholm", res.report, art);
  } catch (const fredholm::CertificateRefusal& r) {
    art.write("certificate.csv", r.certificate.to_csv());
    const std::string text = head + "status: Refused\n" + fmt::format("reason: {}\n", r.what()) + r.certificate.to_text();
    art.write("report.txt", text);
    art.write("violation.txt", violation_record("solve-fredholm", "CertificateRefused", r.certificate.increments.size(),
                                                "convergence-certificate", r.what()));
    out << text;
    return exit_violation;
  }
}

// ---------------------------------------------------------------------------
// solve-map

struct RealMap {
  std::function<double(double)> apply;
  double lipschitz = 0.0;
  bool monotone = false;
  std::string description;
};

RealMap lookup_map(const std::string& name, std::optional<double> lipschitz) {
  if (name == "half") return {[](double x) { return x / 2; }, 0.5, true, "x/2"};
  if (name == "half_plus_one") return {[](double x) { return x / 2 + 1; }, 0.5, true, "x/2 + 1"};
  if (name == "cos_half") return {[](double x) { return std::cos(x) / 2; }, 0.5, false, "cos(x)/2"};
  if (name == "shift") return {[](double x) { return x + 1; }, 1.0, true, "x + 1"};
  if (name == "identity") return {[](double x) { return x; }, 1.0, true, "x"};
  if (name.rfind("expr:", 0) == 0) {
    if (!lipschitz) throw PreconditionError("--map expr:... needs --lipschitz");
    const Expression e = Expression::compile(name.substr(5), {"x"});
    return {[e](double x) { return e({x}); }, *lipschitz, true, e.text()};
  }
  throw PreconditionError(
      fmt::format("unknown map '{}' (half, half_plus_one, cos_half, shift, identity, expr:<formula in x>)", name));
}

int solve_map_cmd(const std::string& map_name, const std::string& driver, double x0, std::optional<double> lipschitz,
                  int ladder_last, const Globals& g, std::ostream& out, std::ostream& err) {
  const RealMap m = lookup_map(map_name, lipschitz);
  if (m.lipschitz < 0) throw PreconditionError("--lipschitz must be non-negative");
  auto space = catalog::real_abs();
  space.ladder = dyadic_ladder(0, ladder_last);
  MapSpec<double> f;
  f.apply = m.apply;
  f.description = m.description;
  if (m.monotone) {
    f.order_leq = [](const double& a, const double& b) { return a <= b; };
    f.point_sup = [](const double& a, const double& b) { return std::max(a, b); };
  }
  SolveOptions so;
  so.budget = g.budget.value_or(1000);
  const double c = m.lipschitz;
  const double slack = 1e-12 * (1.0 + std::fabs(x0));

  SolveReport<double, double> rep;
  if (driver == "meir-keeler") {
    MeirKeelerData<double, double> mk;
    mk.delta_of = [c](const double& eps) { return c == 0.0 ? eps : c < 1.0 ? eps * (1 - c) / (2 * c) : eps / 2; };
    mk.zeta = [](const double& a, const double& b) { return a + b; };
    mk.midpoint = [](const double& x, const double& y, const double& a, const double& b) -> std::optional<double> {
      if (!(std::fabs(x - y) < a + b)) return std::nullopt;
      return x + (y - x) * a / (a + b);
    };
    Rng rng = Rng(g.seed).split(7);
    std::vector<std::pair<double, double>> pairs;
    const double scale = 1.0 + std::fabs(x0);
    for (int i = 0; i < 256; ++i) {
      // dyadic samples keep |x - y| and its sums exact
      const double x = std::ldexp(std::round(std::ldexp(rng.uniform(-scale, scale), 40)), -40);
      const double h = std::ldexp(1.0, -static_cast<int>(rng.index(static_cast<std::size_t>(ladder_last) + 2)));
      pairs.emplace_back(x, x + (rng.coin() ? h : -h));
    }
    rep = solve_meir_keeler(space, f, mk, x0, pairs, so);
  } else if (driver == "caristi") {
    CaristiData<double, double> cd;
    const double factor = c < 1.0 ? 1.0 / (1.0 - c) : 1.0;
    cd.potential = [fa = m.apply, factor](const double& x) { return factor * std::fabs(x - fa(x)); };
    cd.eta = [](const double& t) { return t; };
    rep = solve_caristi(space, f, cd, x0, so);
  } else if (driver == "sequential" || driver == "monotone") {
    SequentialOptions<double, double> opt;
    opt.solve = so;
    opt.mode = SequentialMode::series;
    opt.step_slack = slack;
    opt.second_seed = x0 + 1.0;
    auto lam = constant_lambda<double>([c](const double& t) { return c * t; }, fmt::format("t -> {} t", format_real(c)));
    if (driver == "sequential") {
      rep = solve_sequential(space, f, lam, x0, opt);
    } else {
      if (!f.order_leq) throw PreconditionError(fmt::format("map '{}' carries no order for the monotone driver", map_name));
      opt.second_seed = std::fabs(x0) + 1.0;
      rep = solve_monotone(space, f, lam, x0, opt);
    }
  } else {
    throw PreconditionError(fmt::format("unknown driver '{}' (meir-keeler, caristi, sequential, monotone)", driver));
  }

  Artifacts art(g.out_dir, err);
  art.write("trace.csv", trace_csv(space, rep.trace));
  const std::string text =
      fmt::format("command: solve-map\nmap: {}\nx0: {}\nseed: {}\n", m.description, format_real(x0), g.seed) +
      report_text(space, rep);
  art.write("report.txt", text);
  out << text;
  return finish_solve("solve-map", rep, art);
}

// ---------------------------------------------------------------------------
// solve-coupled

int solve_coupled_cmd(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err) {
  const Config c = Config::load(path);
  c.restrict_to({"f", "x0", "y0", "lipschitz", "ladder", "budget", "step_slack"});
  const Expression fe = compile_key(c, "f", {"u", "v"});
  const double x0 = c.real("x0");
  const double y0 = c.real("y0");
  const auto ab = c.reals("lipschitz");
  if (ab.size() != 2 || ab[0] < 0 || ab[1] < 0) c.fail("lipschitz", "expected two non-negative constants 'a b'");
  const double a = ab[0];
  const double b = ab[1];
  const auto [lo, hi] = ladder_exponents(c, {0, 24});
  auto base = catalog::real_abs();
  base.ladder = dyadic_ladder(lo, hi);

  SequentialOptions<Profile<double>, std::vector<double>> opt;
  opt.solve.budget = g.budget ? *g.budget : c.count("budget", 1000);
  const double s = c.real("step_slack", 1e-12 * (1.0 + std::fabs(x0) + std::fabs(y0)));
  opt.step_slack = std::vector<double>{s, s};
  auto lam = constant_lambda<std::vector<double>>(
      [a, b](const std::vector<double>& d) { return std::vector<double>{a * d[0] + b * d[1], b * d[0] + a * d[1]}; },
      fmt::format("(p, q) -> ({0} p + {1} q, {1} p + {0} q)", format_real(a), format_real(b)));
  const auto rep = coupled_fixed_point<double, double>(
      base, [fe](const double& u, const double& v) { return fe({u, v}); },
      [](const double& p, const double& q) { return p <= q; }, x0, y0, lam, opt);

  auto product = coordinatewise_product(std::vector<DistanceSpace<double, double>>(2, base));
  Artifacts art(g.out_dir, err);
  art.write("trace.csv", trace_csv(product, rep.trace));
  const std::string text = fmt::format("command: solve-coupled\nf(u, v): {}\nseed_profile: ({}, {})\n", fe.text(),
                                       format_real(x0), format_real(y0)) +
                           report_text(product, rep);
  art.write("report.txt", text);
  out << text;
  return finish_solve("solve-coupled", rep, art);
}

// ---------------------------------------------------------------------------
// check-space

std::optional<FwLevel> parse_level(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "weak") return FwLevel::weak;
  if (s == "standard") return FwLevel::standard;
  if (s == "strong") return FwLevel::strong;
  throw PreconditionError(fmt::format("unknown level '{}' (weak, standard, strong)", s));
}

int check_space_cmd(const std::string& name, bool axioms, const std::string& level, bool triangle, std::size_t trials,
                    const Globals& g, std::ostream& out, std::ostream& err) {
  const auto lv = parse_level(level);
  const auto entry = catalog::lookup_space(name, g.seed);
  if (!axioms && !lv && !triangle) axioms = true;
  std::string text = fmt::format("command: check-space\nspace: {}\ndescription: {}\nkind: {}\nseed: {}\ntrials: {}\n",
                                 entry.name, entry.description, entry.kind, g.seed, trials);
  bool failed = false;
  std::string record;
  if (axioms) {
    const auto r = entry.axioms(trials, g.seed);
    text += "[axioms]\n" + r.to_text();
    if (!r.passed()) {
      failed = true;
      for (const auto& e : r.entries) {
        if (!e.passed) record += violation_record("check-space", "AxiomFailed", 0, e.axiom, e.counterexample);
      }
    }
  }
  if (triangle) {
    const auto r = entry.triangle(trials, g.seed);
    text += "[triangle]\n" + r.to_text();
    if (!r.passed()) {
      failed = true;
      for (const auto& e : r.entries) {
        if (!e.passed) record += violation_record("check-space", "TriangleFailed", 0, e.axiom, e.counterexample);
      }
    }
  }
  if (lv) {
    const auto cx = entry.falsify(*lv, trials, g.seed);
    text += fmt::format("[frechet-wilson {}]\nverdict: {}\n", to_string(*lv), cx ? "FALSIFIED" : "NOT FALSIFIED");
    if (cx) {
      failed = true;
      text += *cx;
      if (text.back() != '\n') text += '\n';
      Artifacts(g.out_dir, err).write("counterexample.txt", *cx + (cx->back() == '\n' ? "" : "\n"));
    }
  }
  Artifacts art(g.out_dir, err);
  art.write("report.txt", text);
  if (!record.empty()) art.write("violation.txt", record);
  out << text;
  return failed ? exit_violation : exit_ok;
}

// ---------------------------------------------------------------------------
// demo

int demo_omega(std::size_t pairs, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto seq = catalog::omega_interleaved(pairs);
  const auto space = catalog::omega_counterexample(pairs + 1);
  const PointTrace<catalog::OmegaPoint> tr(seq);
  const auto cw = is_cw_sequence(space, tr);
  const auto cauchy = is_cauchy_sequence(space, tr);
  const auto conv = converges_to(space, tr, catalog::OmegaPoint::infinity());
  std::string csv = "index,point,distance_to_next,distance_to_infinity\n";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    csv += fmt::format("{},{},{},{}\n", i, catalog::to_string(seq[i]),
                       i + 1 < seq.size() ? format_real(space.distance(seq[i], seq[i + 1])) : "",
                       format_real(space.distance(seq[i], catalog::OmegaPoint::infinity())));
  }
  const auto flag = [](const TraceVerdict& v) { return v.decision == Decision::holds ? "true" : "false"; };
  const std::string text = fmt::format(
      "command: demo omega_counterexample\nspace: {}\nprefix: {}\nbottom_rung: {}\n"
      "cw: {} ({}, settle {})\ncauchy: {} ({}, settle {})\nconverges_to_infinity: {} ({}, settle {})\n",
      space.description, seq.size(), format_real(space.ladder.bottom()), flag(cw), to_string(cw.decision),
      cw.settle_index, flag(cauchy), to_string(cauchy.decision), cauchy.settle_index, flag(conv),
      to_string(conv.decision), conv.settle_index);
  Artifacts art(g.out_dir, err);
  art.write("sequence.csv", csv);
  art.write("report.txt", text);
  out << text;
  const bool as_expected = cw.decision == Decision::holds && cauchy.decision != Decision::holds &&
                           conv.decision == Decision::holds;
  return as_expected ? exit_ok : exit_violation;
}

int demo_lambda(std::size_t budget, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto mon = real_nonneg();
  const auto ladder = dyadic_ladder(0, 4);
  LambdaSequence<double> set1{[](std::size_t n, const double& t) { return t * n / (n + 1.0); }, false,
                              "t -> n/(n+1) t"};
  LambdaSequence<double> set2{[](std::size_t n, const double& t) {
                                const double r = n / (n + 1.0);
                                return t * r * r;
                              },
                              false, "t -> (n/(n+1))^2 t"};
  std::string csv = "n,product_1,product_2\n";
  std::string text = fmt::format("command: demo lambda_sequences\nbudget: {}\nbottom_rung: {}\n", budget,
                                 format_real(ladder.bottom()));
  std::vector<MTrace<double>> traces;
  for (const auto* lam : {&set1, &set2}) {
    auto tr = lambda_product_trace(*lam, 1.0, budget);
    const auto null = is_null_trace(tr, ladder, mon);
    const auto series = cauchy_series_check(tr, ladder, mon);
    text += fmt::format("{}: null {} (settle {}), cauchy_series {} (settle {})\n", lam->description,
                        to_string(null.decision), null.settle_index, to_string(series.decision), series.settle_index);
    traces.push_back(std::move(tr));
  }
  for (std::size_t i = 0; i < budget; ++i) {
    csv += fmt::format("{},{},{}\n", i + 1, format_real(traces[0].elements[i]), format_real(traces[1].elements[i]));
  }
  Artifacts art(g.out_dir, err);
  art.write("products.csv", csv);
  art.write("report.txt", text);
  out << text;
  return exit_ok;
}

int demo_entourage(const Globals& g, std::ostream& out, std::ostream& err) {
  const auto u = catalog::euclidean_uniform(8, g.seed);
  std::vector<std::size_t> pts(8);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = i;
  const auto r = check_triangle(u.space, all_triples(pts));
  const std::string text = fmt::format("command: demo entourage\nspace: {}\nseed: {}\n", u.space.description, g.seed) +
                           "[triangle, exhaustive]\n" + r.to_text();
  Artifacts art(g.out_dir, err);
  art.write("report.txt", text);
  if (!r.passed()) {
    art.write("violation.txt",
              violation_record("demo entourage", "TriangleFailed", 0, "triangle", r.entries.front().counterexample));
  }
  out << text;
  return r.passed() ? exit_ok : exit_violation;
}

int demo_cmd(const std::string& name, const Globals& g, std::ostream& out, std::ostream& err) {
  if (name == "omega_counterexample") return demo_omega(g.budget.value_or(200), g, out, err);
  if (name == "lambda_sequences") return demo_lambda(g.budget.value_or(10000), g, out, err);
  if (name == "entourage") return demo_entourage(g, out, err);
  throw PreconditionError(
      fmt::format("unknown demo '{}' (omega_counterexample, lambda_sequences, entourage)", name));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pomfix: fixed-point drivers over monoid-valued distance spaces", "pomfix"};
  app.require_subcommand(1);
  Globals g;
  std::size_t budget = 0;
  app.add_option("--out", g.out_dir, "artifact directory")->capture_default_str();
  app.add_option("--seed", g.seed, "deterministic seed")->capture_default_str();
  auto* budget_opt = app.add_option("--budget", budget, "iteration budget (overrides config)")->check(CLI::PositiveNumber);

  std::string path;
  auto* fred = app.add_subcommand("solve-fredholm", "solve a discretized Fredholm equation from a config file");
  fred->add_option("config", path)->required();

  std::string map_name, driver;
  double x0 = 0.0;
  double lipschitz = 0.0;
  int ladder_last = 24;
  auto* smap = app.add_subcommand("solve-map", "iterate a real self-map with one of the four drivers");
  smap->add_option("--map", map_name)->required();
  smap->add_option("--driver", driver)->required();
  smap->add_option("--x0", x0)->required();
  auto* lip_opt = smap->add_option("--lipschitz", lipschitz, "contraction constant for expr: maps");
  smap->add_option("--ladder-last", ladder_last, "bottom rung exponent")->capture_default_str()->check(
      CLI::Range(0, 60));

  auto* coupled = app.add_subcommand("solve-coupled", "coupled fixed point from a config file");
  coupled->add_option("config", path)->required();

  std::string space_name, level;
  bool axioms = false, triangle = false;
  std::size_t trials = 10000;
  auto* check = app.add_subcommand("check-space", "axiom audits and Frechet-Wilson falsifiers");
  check->add_option("name", space_name)->required();
  check->add_flag("--axioms", axioms);
  check->add_option("--fw", level);
  check->add_flag("--triangle", triangle);
  check->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "omega_counterexample | lambda_sequences | entourage");
  demo->add_option("name", demo_name)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_config;
  }
  if (budget_opt->count()) g.budget = budget;

  try {
    if (*fred) return solve_fredholm_cmd(path, g, out, err);
    if (*smap) {
      return solve_map_cmd(map_name, driver, x0, lip_opt->count() ? std::optional<double>(lipschitz) : std::nullopt,
                           ladder_last, g, out, err);
    }
    if (*coupled) return solve_coupled_cmd(path, g, out, err);
    if (*check) return check_space_cmd(space_name, axioms, level, triangle, trials, g, out, err);
    if (*demo) return demo_cmd(demo_name, g, out, err);
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }
  return exit_config;
}

}  // namespace pomfix::cli
