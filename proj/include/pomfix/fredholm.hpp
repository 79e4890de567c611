#pragma once

// Nyström-discretized Fredholm equations x(t) = f(t) + ∫ g(t,s,x(s)) dμ(s),
// the iterated-kernel convergence certificate, and the solve through the
// sequential driver on the grid-function monoid.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pomfix/engine.hpp"
#include "pomfix/monoid.hpp"
#include "pomfix/spaces.hpp"

namespace pomfix::fredholm {

using GridFunction = std::vector<double>;

/// Quadrature nodes on [a, b] with non-negative weights.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  /// Composite trapezoid rule with m ≥ 2 equally spaced nodes.
  static Grid trapezoid(double a, double b, std::size_t m);
  /// Arbitrary rule; throws unless nodes strictly increase, weights are
  /// non-negative and the sizes agree.
  static Grid custom(std::vector<double> nodes, std::vector<double> weights);
  double measure() const;
};

struct KernelSpec {
  /// Lipschitz majorant Q ≥ 0.
  std::function<double(double t, double s)> q;
  /// Integrand g(t, s, x).
  std::function<double(double t, double s, double x)> g;
  /// Inhomogeneity f(t).
  std::function<double(double t)> f;
  std::string description;
};

/// g = c·x, Q = c.
KernelSpec constant_kernel(double c, std::function<double(double)> f);
/// g = t·s·x, Q = t·s.
KernelSpec product_ts_kernel(std::function<double(double)> f);

/// [Q(t_i, s_j)].
Eigen::MatrixXd sample_kernel(const KernelSpec& k, const Grid& grid);
/// Q_1 = Q, Q_n = Q_{n-1} · diag(w) · Q_1.
Eigen::MatrixXd iterate_kernel(const KernelSpec& k, const Grid& grid, std::size_t n);
/// λx(t_i) = Σ_j w_j Q(t_i, s_j) x(s_j).
GridFunction lambda_apply(const KernelSpec& k, const Grid& grid, const GridFunction& x);

/// Largest eigenvalue modulus of [Q(t_i, s_j) w_j].
double spectral_radius(const KernelSpec& k, const Grid& grid);

struct ConvergenceCertificate {
  /// Increment n (1-based position n-1): r_n(t_i) = Σ_j w_j Q_n(t_i, s_j).
  std::vector<GridFunction> increments;
  /// S_N(t_i) for the last computed N.
  GridFunction partial_sums;
  /// sup_i of the tail sum from the middle of the trace to its end.
  double tail_window_max = 0.0;
  double spectral_radius = 0.0;
  bool certified = false;
  bool overflow = false;
  TraceVerdict series;

  std::string verdict() const { return certified ? "Certified" : "NotCertifiedWithin"; }
  /// N,sup_increment,partial_sup rows.
  std::string to_csv() const;
  std::string to_text() const;
};

Ladder<GridFunction> default_grid_ladder(std::size_t nodes);

ConvergenceCertificate certify_convergence(const KernelSpec& k, const Grid& grid, const Ladder<GridFunction>& ladder,
                                           std::size_t n_max);

/// sup_i |x_i − f(t_i) − Σ_j w_j g(t_i, s_j, x_j)|.
double residual(const KernelSpec& k, const Grid& grid, const GridFunction& x);

/// The operator A x = f + ∫ g(·, s, x(s)) dμ(s) on the grid.
GridFunction apply_operator(const KernelSpec& k, const Grid& grid, const GridFunction& x);

/// The grid-function distance space h(x,y)(t_i) = |x_i − y_i|.
DistanceSpace<GridFunction, GridFunction> grid_space(const Grid& grid, const Ladder<GridFunction>& ladder);

class CertificateRefusal : public std::runtime_error {
 public:
  CertificateRefusal(const std::string& what, ConvergenceCertificate cert)
      : std::runtime_error(what), certificate(std::move(cert)) {}
  ConvergenceCertificate certificate;
};

struct FredholmOptions {
  std::size_t budget = 1000;
  std::size_t n_max = 1000;
  bool force = false;
  std::uint64_t seed = 0;
  std::size_t majorant_samples = 2000;
};

struct FredholmResult {
  GridFunction solution;
  SolveReport<GridFunction, GridFunction> report;
  ConvergenceCertificate certificate;
  double residual = 0.0;
};

/// Certifies, audits the majorant on sampled (t, s, x, y), then runs the
/// sequential driver with the constant λ = lambda_apply. Throws
/// CertificateRefusal when the certificate fails and `force` is off.
FredholmResult solve_fredholm(const KernelSpec& k, const Grid& grid, const Ladder<GridFunction>& ladder,
                              const FredholmOptions& opt = {});

std::string solution_csv(const Grid& grid, const GridFunction& x);

}  // namespace pomfix::fredholm
