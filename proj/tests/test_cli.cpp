#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pomfix/cli.hpp"
#include "pomfix/config.hpp"
#include "pomfix/expr.hpp"

using namespace pomfix;
namespace fs = std::filesystem;

namespace {

const std::string source_dir = POMFIX_SOURCE_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("pomfix_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::map<std::string, std::string> dir_bytes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

std::string write_cfg(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / ("pomfix_test_" + name + ".cfg");
  std::ofstream(p) << text;
  return p.string();
}

std::string cfg(const std::string& name) { return source_dir + "/configs/" + name; }

// value column of a node,value CSV
std::vector<std::pair<double, double>> read_solution(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto c = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, c)), std::stod(line.substr(c + 1)));
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expressions") {
    const auto e = Expression::compile("2 + 3 * x - y / 4", {"x", "y"});
    CHECK(e({1, 8}) == 3.0);
    CHECK(Expression::compile("2^3^2", {})({}) == 512.0);
    CHECK(Expression::compile("-2^2", {})({}) == -4.0);
    CHECK(Expression::compile("(1 + 2) * -3", {})({}) == -9.0);
    CHECK(Expression::compile("sin(pi / 2) + exp(0) + log(e)", {})({}) == doctest::Approx(3.0));
    CHECK(Expression::compile("max(t, s) - min(t, s) + abs(-1) + sqrt(4) + tanh(0) + cos(0) + tan(0)",
                              {"t", "s"})({2, 5}) == 7.0);
    CHECK(Expression::compile("1e-3 * 2.5E2", {})({}) == 0.25);
    CHECK(e.text() == "2 + 3 * x - y / 4");
  }

  TEST_CASE("expression errors carry a column") {
    auto column_of = [](const std::string& text) -> std::size_t {
      try {
        Expression::compile(text, {"x"});
      } catch (const ExpressionError& e) {
        return e.column;
      }
      return 0;
    };
    CHECK(column_of("x + y") == 5);
    CHECK(column_of("1 + ") == 5);
    CHECK(column_of("sin x") == 1);
    CHECK(column_of("(1 + 2") == 7);
    CHECK(column_of("1 $ 2") == 3);
    CHECK(column_of("max(1)") > 0);
    CHECK(column_of("foo(1)") == 1);
    CHECK_THROWS_AS(Expression::compile("x", {"x"})({1, 2}), PreconditionError);
    try {
      Expression::compile("x + y", {"x"});
    } catch (const ExpressionError& e) {
      CHECK(std::string(e.what()).find("column 5") != std::string::npos);
    }
  }

  TEST_CASE("config parsing") {
    const auto c = Config::parse("# header\nnodes = 11\ninterval = 0 1  # trailing\nname = demo\nforce = true\n",
                                 "t.cfg");
    CHECK(c.count("nodes") == 11);
    CHECK(c.reals("interval") == std::vector<double>{0, 1});
    CHECK(c.str("name") == "demo");
    CHECK(c.flag("force", false));
    CHECK_FALSE(c.flag("missing", false));
    CHECK(c.real("missing", 2.5) == 2.5);
    CHECK_THROWS_AS(c.real("missing"), ConfigError);
    CHECK_THROWS_AS(c.count("name"), ConfigError);
    CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n", "dup.cfg"), ConfigError);
    CHECK_THROWS_AS(Config::parse("no equals sign\n"), ConfigError);
    CHECK_THROWS_AS(c.restrict_to({"nodes"}), ConfigError);
    try {
      Config::parse("a = 1\n\na = 2\n", "dup.cfg");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("dup.cfg:3") != std::string::npos);
    }
    try {
      c.count("name");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("t.cfg:4: name:") != std::string::npos);
    }
  }

  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == cli::exit_config);
    CHECK(run({"frobnicate"}).code == cli::exit_config);
    CHECK(run({"solve-map", "--map", "nope", "--driver", "caristi", "--x0", "1"}).code == cli::exit_config);
    CHECK(run({"solve-fredholm", "/nonexistent.cfg"}).code == cli::exit_config);
    CHECK(run({"check-space", "no_such_space"}).code == cli::exit_config);
    const auto bad = write_cfg("bad_key", "interval = 0 1\nnodes = 11\nkernel = product_ts\nf = t\nbogus = 1\n");
    const auto r = run({"--out", scratch("bad_key").string(), "solve-fredholm", bad});
    CHECK(r.code == cli::exit_config);
    CHECK(r.err.find("bogus") != std::string::npos);
    const auto bad_expr = write_cfg("bad_expr", "interval = 0 1\nnodes = 11\nkernel = product_ts\nf = t +\n");
    CHECK(run({"--out", scratch("bad_expr").string(), "solve-fredholm", bad_expr}).code == cli::exit_config);
  }

  TEST_CASE("solve-fredholm on the ts problem writes the solution near 3t/2") {
    const auto out = scratch("ts");
    const auto r = run({"--out", out.string(), "solve-fredholm", cfg("fredholm_ts.cfg")});
    REQUIRE(r.code == cli::exit_ok);
    for (const char* f : {"solution.csv", "certificate.csv", "trace.csv", "report.txt"}) CHECK(fs::exists(out / f));
    const auto rows = read_solution(out / "solution.csv");
    CHECK(rows.size() == 401);
    double err = 0;
    for (const auto& [t, v] : rows) err = std::max(err, std::fabs(v - 1.5 * t));
    CHECK(err <= 1e-4);
    CHECK(slurp(out / "report.txt").find("status: Certified") != std::string::npos);
  }

  TEST_CASE("solve-fredholm refuses a divergent kernel with exit 1") {
    const auto out = scratch("div");
    const auto r = run({"--out", out.string(), "solve-fredholm", cfg("fredholm_divergent.cfg")});
    CHECK(r.code == cli::exit_violation);
    CHECK(fs::exists(out / "certificate.csv"));
    CHECK(fs::exists(out / "violation.txt"));
    CHECK_FALSE(fs::exists(out / "solution.csv"));
  }

  TEST_CASE("solve-map drivers") {
    for (const std::string driver : {"meir-keeler", "caristi", "sequential", "monotone"}) {
      CAPTURE(driver);
      const auto out = scratch("map_" + driver);
      const std::string x0 = driver == "monotone" ? "-8" : "8";
      const auto r = run({"--out", out.string(), "solve-map", "--map", "half", "--driver", driver, "--x0", x0});
      CHECK(r.code == cli::exit_ok);
      CHECK(fs::exists(out / "trace.csv"));
      CHECK(fs::exists(out / "report.txt"));
    }
    const auto out = scratch("map_shift");
    const auto r = run({"--out", out.string(), "solve-map", "--map", "shift", "--driver", "meir-keeler", "--x0", "0"});
    CHECK(r.code == cli::exit_violation);
    CHECK(fs::exists(out / "violation.txt"));
    const auto e = run({"--out", scratch("map_expr").string(), "solve-map", "--map", "expr:x/3 + 1", "--driver",
                        "sequential", "--x0", "0", "--lipschitz", "0.34"});
    CHECK(e.code == cli::exit_ok);
  }

  TEST_CASE("solve-coupled") {
    const auto out = scratch("coupled");
    const auto r = run({"--out", out.string(), "solve-coupled", cfg("coupled.cfg")});
    CHECK(r.code == cli::exit_ok);
    CHECK(slurp(out / "report.txt").find("status: Certified") != std::string::npos);
  }

  TEST_CASE("check-space") {
    CHECK(run({"--out", scratch("cs_abs").string(), "check-space", "real_abs", "--trials", "2000"}).code ==
          cli::exit_ok);
    const auto sq = scratch("cs_sq");
    CHECK(run({"--out", sq.string(), "check-space", "squared", "--fw", "strong", "--trials", "2000"}).code ==
          cli::exit_violation);
    const auto ce = slurp(sq / "counterexample.txt");
    CHECK(ce.find("property: strong-frechet-wilson") != std::string::npos);
    CHECK(ce.find("points:") != std::string::npos);
    CHECK(run({"--out", scratch("cs_snow").string(), "check-space", "snowflake", "--fw", "strong", "--trials",
               "2000"})
              .code == cli::exit_ok);
    CHECK(run({"--out", scratch("cs_tri").string(), "check-space", "squared", "--triangle", "--trials", "2000"})
              .code == cli::exit_violation);
  }

  TEST_CASE("demos") {
    const auto om = scratch("omega");
    CHECK(run({"--out", om.string(), "demo", "omega_counterexample"}).code == cli::exit_ok);
    const auto rep = slurp(om / "report.txt");
    CHECK(rep.find("cw: true") != std::string::npos);
    CHECK(rep.find("cauchy: false") != std::string::npos);
    CHECK(rep.find("converges_to_infinity: true") != std::string::npos);
    CHECK(run({"--out", scratch("lam").string(), "--budget", "2000", "demo", "lambda_sequences"}).code ==
          cli::exit_ok);
    CHECK(run({"--out", scratch("ent").string(), "demo", "no_such_demo"}).code == cli::exit_config);
  }

  TEST_CASE("same seed, same bytes") {
    const std::vector<std::vector<std::string>> commands = {
        {"solve-fredholm", cfg("fredholm_user.cfg")},
        {"solve-map", "--map", "cos_half", "--driver", "meir-keeler", "--x0", "1"},
        {"solve-coupled", cfg("coupled.cfg")},
        {"check-space", "squared", "--fw", "strong", "--trials", "3000"},
        {"check-space", "omega_counterexample{50}", "--axioms", "--triangle", "--trials", "3000"},
        {"demo", "omega_counterexample"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
      CAPTURE(i);
      std::map<std::string, std::string> first;
      for (int rep = 0; rep < 2; ++rep) {
        const auto out = scratch("det_" + std::to_string(i) + "_" + std::to_string(rep));
        std::vector<std::string> args = {"--out", out.string(), "--seed", "17"};
        args.insert(args.end(), commands[i].begin(), commands[i].end());
        run(args);
        const auto bytes = dir_bytes(out);
        REQUIRE_FALSE(bytes.empty());
        if (rep == 0) first = bytes;
        else CHECK(bytes == first);
      }
    }
  }
}
