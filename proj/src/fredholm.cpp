#include "pomfix/fredholm.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace pomfix::fredholm {

Grid Grid::trapezoid(double a, double b, std::size_t m) {
  if (m < 2) throw PreconditionError("trapezoid grid needs at least two nodes");
  if (!(b > a)) throw PreconditionError("trapezoid grid needs a < b");
  Grid g;
  const double h = (b - a) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    g.nodes.push_back(i + 1 == m ? b : a + h * static_cast<double>(i));
    g.weights.push_back(i == 0 || i + 1 == m ? h / 2 : h);
  }
  return g;
}

Grid Grid::custom(std::vector<double> nodes, std::vector<double> weights) {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw PreconditionError("grid needs matching non-empty node and weight lists");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && !(nodes[i] > nodes[i - 1])) throw PreconditionError("grid nodes must strictly increase");
    if (!(weights[i] >= 0.0)) throw PreconditionError("grid weights must be non-negative");
  }
  return Grid{std::move(nodes), std::move(weights)};
}

double Grid::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

KernelSpec constant_kernel(double c, std::function<double(double)> f) {
  if (c < 0.0) throw PreconditionError("constant kernel needs c >= 0");
  return KernelSpec{[c](double, double) { return c; }, [c](double, double, double x) { return c * x; }, std::move(f),
                    fmt::format("constant{{{}}}", format_real(c))};
}

KernelSpec product_ts_kernel(std::function<double(double)> f) {
  return KernelSpec{[](double t, double s) { return t * s; }, [](double t, double s, double x) { return t * s * x; },
                    std::move(f), "product_ts"};
}

Eigen::MatrixXd sample_kernel(const KernelSpec& k, const Grid& grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd q(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) q(i, j) = k.q(grid.nodes[i], grid.nodes[j]);
  return q;
}

namespace {

Eigen::Map<const Eigen::VectorXd> view(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GridFunction to_vec(const Eigen::VectorXd& v) { return GridFunction(v.data(), v.data() + v.size()); }

// [Q(t_i, s_j) w_j], the matrix of λ on the grid.
Eigen::MatrixXd weighted_kernel(const KernelSpec& k, const Grid& grid) {
  return sample_kernel(k, grid) * view(grid.weights).asDiagonal();
}

double sup_norm(const GridFunction& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::fabs(x));
  return s;
}

}  // namespace

Eigen::MatrixXd iterate_kernel(const KernelSpec& k, const Grid& grid, std::size_t n) {
  if (n == 0) throw PreconditionError("iterate_kernel: n must be at least 1");
  const Eigen::MatrixXd q1 = sample_kernel(k, grid);
  const Eigen::MatrixXd step = view(grid.weights).asDiagonal() * q1;
  Eigen::MatrixXd qn = q1;
  for (std::size_t i = 1; i < n; ++i) qn = qn * step;
  return qn;
}

GridFunction lambda_apply(const KernelSpec& k, const Grid& grid, const GridFunction& x) {
  if (x.size() != grid.size()) throw PreconditionError("lambda_apply: function length differs from the grid");
  GridFunction out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += grid.weights[j] * k.q(grid.nodes[i], grid.nodes[j]) * x[j];
    out[i] = s;
  }
  return out;
}

double spectral_radius(const KernelSpec& k, const Grid& grid) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(weighted_kernel(k, grid), false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_radius: eigenvalue solver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Ladder<GridFunction> default_grid_ladder(std::size_t nodes) { return constant_dyadic_ladder(nodes, 1, 20); }

ConvergenceCertificate certify_convergence(const KernelSpec& k, const Grid& grid, const Ladder<GridFunction>& ladder,
                                           std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("certify_convergence: N_max must be at least 1");
  ConvergenceCertificate cert;
  const Eigen::MatrixXd lam = weighted_kernel(k, grid);
  const auto mon = grid_function(grid.size());
  // r_n = λ^n(1): Q_n · diag(w) · 1 without forming Q_n.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(grid.size()));
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(v.size());
  for (std::size_t n = 1; n <= n_max; ++n) {
    v = lam * v;
    if (!v.allFinite() || v.cwiseAbs().maxCoeff() > 1e300) {
      cert.overflow = true;
      break;
    }
    sum += v;
    cert.increments.push_back(to_vec(v));
  }
  cert.partial_sums = to_vec(sum);
  cert.spectral_radius = spectral_radius(k, grid);
  if (cert.overflow || cert.increments.empty()) {
    cert.certified = false;
    return cert;
  }
  MTrace<GridFunction> trace(cert.increments, n_max);
  cert.series = cauchy_series_check(trace, ladder, mon);
  cert.certified = cert.series.decision == Decision::holds;
  const auto tails = tail_sums(cert.increments, mon);
  cert.tail_window_max = sup_norm(tails[tails.size() / 2]);
  return cert;
}

std::string ConvergenceCertificate::to_csv() const {
  std::string out = "N,sup_increment,partial_sup\n";
  GridFunction partial(increments.empty() ? 0 : increments.front().size(), 0.0);
  for (std::size_t n = 0; n < increments.size(); ++n) {
    for (std::size_t i = 0; i < partial.size(); ++i) partial[i] += increments[n][i];
    out += fmt::format("{},{},{}\n", n + 1, format_real(sup_norm(increments[n])), format_real(sup_norm(partial)));
  }
  return out;
}

std::string ConvergenceCertificate::to_text() const {
  std::string out;
  out += fmt::format("verdict: {}\n", verdict());
  out += fmt::format("terms: {}\n", increments.size());
  out += fmt::format("series_decision: {}\n", to_string(series.decision));
  out += fmt::format("settle_index: {}\n", series.settle_index);
  out += fmt::format("partial_sum_sup: {}\n", format_real(sup_norm(partial_sums)));
  out += fmt::format("tail_window_max: {}\n", format_real(tail_window_max));
  out += fmt::format("spectral_radius: {}\n", format_real(spectral_radius));
  out += fmt::format("overflow: {}\n", overflow ? "true" : "false");
  return out;
}

GridFunction apply_operator(const KernelSpec& k, const Grid& grid, const GridFunction& x) {
  GridFunction out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) s += grid.weights[j] * k.g(grid.nodes[i], grid.nodes[j], x[j]);
    out[i] = k.f(grid.nodes[i]) + s;
  }
  return out;
}

double residual(const KernelSpec& k, const Grid& grid, const GridFunction& x) {
  if (x.size() != grid.size()) throw PreconditionError("residual: function length differs from the grid");
  const GridFunction ax = apply_operator(k, grid, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::fabs(x[i] - ax[i]));
  return r;
}

DistanceSpace<GridFunction, GridFunction> grid_space(const Grid& grid, const Ladder<GridFunction>& ladder) {
  auto mon = grid_function(grid.size());
  return DistanceSpace<GridFunction, GridFunction>{
      fmt::format("grid_function_space{{{}}}", grid.size()),
      [](const GridFunction& x, const GridFunction& y) {
        GridFunction d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = std::fabs(x[i] - y[i]);
        return d;
      },
      SpaceKind::distance,
      mon,
      ladder,
      [](const GridFunction& x) { return fmt::format("<{} nodes, sup {}>", x.size(), format_real(sup_norm(x))); },
      true,
      true};
}

FredholmResult solve_fredholm(const KernelSpec& k, const Grid& grid, const Ladder<GridFunction>& ladder,
                              const FredholmOptions& opt) {
  FredholmResult res;
  res.certificate = certify_convergence(k, grid, ladder, opt.n_max);
  if (!res.certificate.certified && !opt.force) {
    throw CertificateRefusal(
        fmt::format("convergence certificate {} (spectral radius {}); rerun with force to iterate anyway",
                    res.certificate.verdict(), format_real(res.certificate.spectral_radius)),
        res.certificate);
  }
  const auto space = grid_space(grid, ladder);
  GridFunction f0(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f0[i] = k.f(grid.nodes[i]);

  // Majorant audit |g(t,s,x) − g(t,s,y)| ≤ Q(t,s)|x − y| on sampled nodes.
  Rng rng(opt.seed);
  const double span = 10.0 * (1.0 + sup_norm(f0));
  for (std::size_t n = 0; n < opt.majorant_samples; ++n) {
    const double t = grid.nodes[rng.index(grid.size())];
    const double s = grid.nodes[rng.index(grid.size())];
    const double x = rng.uniform(-span, span);
    const double y = rng.uniform(-span, span);
    const double lhs = std::fabs(k.g(t, s, x) - k.g(t, s, y));
    const double q = k.q(t, s);
    const double rhs = q * std::fabs(x - y);
    if (q < 0.0 || lhs > rhs * (1.0 + 1e-12) + 1e-300) {
      res.report.driver = "fredholm";
      res.report.status = SolveStatus::hypothesis_violated;
      res.report.violation = Violation{
          0, "kernel-majorant",
          fmt::format("t={} s={} x={} y={}: |g(x)-g(y)| = {} > Q|x-y| = {}", format_real(t), format_real(s),
                      format_real(x), format_real(y), format_real(lhs), format_real(rhs))};
      res.solution = f0;
      res.residual = residual(k, grid, f0);
      return res;
    }
  }

  MapSpec<GridFunction> a;
  a.apply = [&k, &grid](const GridFunction& x) { return apply_operator(k, grid, x); };
  a.description = "fredholm operator";
  // Same operator as lambda_apply, with the kernel sampled once.
  const Eigen::MatrixXd kw = weighted_kernel(k, grid);
  auto lam = constant_lambda<GridFunction>([&kw](const GridFunction& t) { return to_vec(kw * view(t)); },
                                           "integral operator with kernel Q");
  SequentialOptions<GridFunction, GridFunction> sopt;
  sopt.solve.budget = opt.budget;
  sopt.n_max = opt.n_max;
  sopt.mode = SequentialMode::series;
  // Rounding in the two quadrature sums of A x − A y is far below this.
  sopt.step_slack = GridFunction(grid.size(), 1e-12 * (1.0 + sup_norm(f0)));
  res.report = solve_sequential(space, a, lam, f0, sopt);
  res.report.driver = "fredholm/" + res.report.driver;
  res.report.diagnostics.push_back(fmt::format("certificate {}{}", res.certificate.verdict(),
                                               opt.force && !res.certificate.certified ? " (forced)" : ""));
  res.solution = res.report.fixed_point ? *res.report.fixed_point : res.report.trace.points.back();
  res.residual = residual(k, grid, res.solution);
  return res;
}

std::string solution_csv(const Grid& grid, const GridFunction& x) {
  std::string out = "node,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += fmt::format("{},{}\n", format_real(grid.nodes[i]), format_real(x[i]));
  }
  return out;
}

}  // namespace pomfix::fredholm
