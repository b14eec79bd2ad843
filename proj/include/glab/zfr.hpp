#pragma once

// Zero-free regions sigma > 1 - eta(|t|) and the transfer functions
//
//   omega(x) = min_{u >= 1} (eta(u) log x + log u)
//   varpi(x) = min_{u >= 0} (eta(u) log x + u)
//
// that turn them into error envelopes for psi and psi_1 and back, together
// with the bound shapes x exp(-C f(x)) and x^2 exp(-C f(x)) those envelopes
// take.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glab/explicit_formula.hpp"

namespace glab {

class EtaFamily {
 public:
  enum class Kind { constant, logpower, tabulated };

  /// eta(u) = theta, theta in (0, 1/2].
  static EtaFamily constant(double theta);

  /// eta(u) = c / (log(u + 3)^a (log log(u + 3))^b), c > 0, a in [0, 1],
  /// b >= 0 when a = 0. (a, b) = (1, 0) is the classical region and
  /// (2/3, 1/3) the Korobov-Vinogradov one.
  static EtaFamily logpower(double c, double a, double b);

  /// Piecewise-linear through (u_i, eta_i), u_0 = 0, u strictly increasing,
  /// eta positive and nonincreasing; constant beyond the last node.
  static EtaFamily tabulated(std::vector<double> u, std::vector<double> eta);

  Kind kind() const noexcept { return kind_; }
  double operator()(double u) const;
  /// d eta / du; one-sided (right) derivative for tabulated families.
  double derivative(double u) const;

  double theta() const noexcept { return c_; }
  double c() const noexcept { return c_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  /// Golden-section search is trusted for built-in kinds only.
  bool builtin() const noexcept { return kind_ != Kind::tabulated; }

  /// eta'(u) -> 0 as u -> infinity.
  bool derivative_vanishes() const noexcept;

  /// 0 < eta(u) <= 1/2 on the sampled u, the range a zero-free region needs.
  bool within_region_bounds(std::span<const double> us) const;

  std::string describe() const;

 private:
  EtaFamily() = default;

  Kind kind_ = Kind::constant;
  double c_ = 0.5;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> u_;
  std::vector<double> eta_;
};

/// Parses `constant:<theta>`, `logpower:<c>,<a>,<b>` (entries may be
/// fractions p/q) or `table:<path>` (two columns u, eta per line; '#' starts
/// a comment).
EtaFamily parse_family(std::string_view spec);

struct MinimizationResult {
  double x = 0.0;
  double u_star = 0.0;
  double value = 0.0;
  /// Search interval in u.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::size_t evaluations = 0;
  /// Smallest objective value found on the audit grid.
  double audit_min = 0.0;
  /// The audit grid beat the local search and its refinement was used.
  bool used_fallback = false;
};

inline constexpr std::size_t kAuditPoints = 10000;

/// Golden section over v = log u on [0, max(1, 2 eta(1) log x)], then a
/// comparison against both endpoints and the audit grid. x >= 3.
MinimizationResult omega(const EtaFamily& eta, double x);

/// Same over u on [0, max(1, 2 eta(0) log x)]. x >= 1, so that shapes may
/// evaluate varpi at (x/2)^{1/A}.
MinimizationResult varpi(const EtaFamily& eta, double x);

/// Objectives being minimized, exposed for audits.
double omega_objective(const EtaFamily& eta, double x, double u);
double varpi_objective(const EtaFamily& eta, double x, double u);

/// Minimum of the objective over a uniform grid of points, in log u for
/// omega and in u for varpi, over the same interval the search uses.
double omega_grid_min(const EtaFamily& eta, double x, std::size_t points = kAuditPoints);
double varpi_grid_min(const EtaFamily& eta, double x, std::size_t points = kAuditPoints);

enum class AsymptoticForm {
  /// ((1 + a) / k) (k c (1 + a)^b log x / (log log x)^b)^{1/(1+a)}, k = a for
  /// a > 0 and k = 1 for a = 0: the value of the minimum of
  /// c log x / (v^a (log v)^b) + v at its stationary point.
  stationary,
  /// Same bracket with the leading factor (1 + a) in place of (1 + a) / k.
  /// Coincides with the stationary form at a = 0 and a = 1 only.
  leading_factor_1_plus_a,
};

/// Main term of omega(x) for the logpower family (c, a, b). x >= 16.
double omega_asymptotic(double c, double a, double b, double x,
                        AsymptoticForm form = AsymptoticForm::stationary);

/// Exponent of log x in omega_asymptotic: 1 / (1 + a).
double omega_asymptotic_exponent(double a);

/// Solves u eta'(u) = -1 / log x for u >= 1 by bisection on log u. Logpower
/// families only; x >= 16. Throws BracketError when the objective is not
/// decreasing at u = 1.
double critical_point(const EtaFamily& eta, double x);

using ShapeFunction = std::function<double(double)>;

struct BoundShape {
  enum class Form {
    /// x exp(-C f(arg(x)))
    linear,
    /// x^2 exp(-C f(arg(x)))
    quadratic,
  };

  Form form = Form::linear;
  double C = 1.0;
  ShapeFunction f;
  std::string f_name;
  /// arg(x) = (x / arg_divisor)^{1 / root}, root defaulting to 1.
  double arg_divisor = 1.0;
  std::optional<double> root;
  /// Extra factor (log x)^log_power.
  double log_power = 0.0;
  /// Arc-split width as a function of N, when the shape came with one.
  ShapeFunction delta;

  double argument(double x) const;
  double operator()(double x) const;
};

BoundShape make_shape(BoundShape::Form form, double C, ShapeFunction f, std::string f_name);

ShapeFunction omega_function(const EtaFamily& eta);
ShapeFunction varpi_function(const EtaFamily& eta);
ShapeFunction log_function();

/// x exp(-C f(x)) for R  ->  N^2 exp(-C f(N)) for R_1 and E.
BoundShape transfer_forward(const BoundShape& shape_r);

/// x^2 exp(-C1 g(x)) for R_1  ->  x exp(-(C1/2) g(x/2)) for R.
BoundShape transfer_backward(const BoundShape& shape_r1);

/// x (log x)^{2/5} exp(-(1/5) f((x/2)^{1/A})), A > 1, with
/// delta(N) = N^{-1} (log N)^{1/5} exp((2/5) f(N^{1/A})).
BoundShape bhowmik_ruzsa_shape(ShapeFunction f, std::string f_name, double A);

/// sup over rows of |residual| / shape(x). Throws DegenerateEnvelopeError
/// when the shape vanishes at a row.
double envelope_fit(std::span<const ResidualRecord> rows, const BoundShape& shape);

/// sup over rows of |residual| / envelope, using each row's own envelope.
double envelope_fit(std::span<const ResidualRecord> rows);

struct GrowthWindowReport {
  bool holds = true;
  std::optional<double> first_violation;
  /// min over samples of f(x) / ((log x)^{3/5} (log log x)^{1/5}).
  double lower_ratio = 0.0;
  /// max over samples of f(x) / log x.
  double upper_ratio = 0.0;
};

/// Checks implied_constant (log x)^{3/5} (log log x)^{1/5} <= f(x) <= (1/2) log x
/// at every sample x >= 16.
GrowthWindowReport check_growth_window(const ShapeFunction& f, std::span<const double> xs,
                                       double implied_constant);

}  // namespace glab
