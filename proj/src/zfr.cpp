#include "glab/zfr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "glab/errors.hpp"

namespace glab {

namespace {

constexpr double kGoldenTol = 1e-10;

struct Minimum {
  double arg;
  double value;
  std::size_t evaluations;
};

template <typename Fn>
Minimum golden_section(Fn&& fn, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  std::size_t evals = 2;
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
    ++evals;
  }
  return fc <= fd ? Minimum{c, fc, evals} : Minimum{d, fd, evals};
}

template <typename Fn>
Minimum grid_scan(Fn&& fn, double lo, double hi, std::size_t points) {
  Minimum best{lo, fn(lo), 1};
  for (std::size_t i = 1; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = fn(t);
    if (v < best.value) best = {t, v, 0};
  }
  best.evaluations = points;
  return best;
}

// Local search with endpoint comparison and grid audit over [lo, hi] in the
// search variable t; to_u maps t back to u.
template <typename Fn, typename ToU>
MinimizationResult minimize(const EtaFamily& eta, double x, Fn&& fn, ToU&& to_u, double lo, double hi) {
  const double step = (hi - lo) / static_cast<double>(kAuditPoints - 1);
  const Minimum grid = grid_scan(fn, lo, hi, kAuditPoints);

  Minimum best{};
  bool fallback = false;
  if (eta.builtin()) {
    best = golden_section(fn, lo, hi, kGoldenTol);
    for (const double end : {lo, hi}) {
      const double v = fn(end);
      ++best.evaluations;
      if (v <= best.value) best = {end, v, best.evaluations};
    }
    fallback = grid.value < best.value - 1e-12 * std::max(1.0, std::abs(grid.value));
  } else {
    fallback = true;
  }
  if (fallback) {
    const double a = std::max(lo, grid.arg - step);
    const double b = std::min(hi, grid.arg + step);
    Minimum local = golden_section(fn, a, b, kGoldenTol);
    local.evaluations += best.evaluations;
    best = local.value <= grid.value ? local : Minimum{grid.arg, grid.value, local.evaluations};
  }

  MinimizationResult out;
  out.x = x;
  out.u_star = to_u(best.arg);
  out.value = best.value;
  out.bracket_lo = to_u(lo);
  out.bracket_hi = to_u(hi);
  out.evaluations = best.evaluations + grid.evaluations;
  out.audit_min = grid.value;
  out.used_fallback = fallback;
  return out;
}

double parse_number(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    return parse_number(text.substr(0, slash)) / den;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw FormatError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

EtaFamily load_family_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open eta table: " + path);
  std::vector<double> us;
  std::vector<double> etas;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a;
    std::string b;
    std::string extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) throw ParseError("expected two columns u, eta", line_no);
    try {
      us.push_back(parse_number(a));
      etas.push_back(parse_number(b));
    } catch (const FormatError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return EtaFamily::tabulated(std::move(us), std::move(etas));
}

}  // namespace

EtaFamily EtaFamily::constant(double theta) {
  if (!(theta > 0.0 && theta <= 0.5)) throw DomainError("constant eta requires 0 < theta <= 1/2");
  EtaFamily f;
  f.kind_ = Kind::constant;
  f.c_ = theta;
  return f;
}

EtaFamily EtaFamily::logpower(double c, double a, double b) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("logpower eta requires c > 0");
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("logpower eta requires 0 <= a <= 1");
  if (!std::isfinite(b) || (a == 0.0 && b < 0.0)) {
    throw DomainError("logpower eta requires b >= 0 when a = 0");
  }
  EtaFamily f;
  f.kind_ = Kind::logpower;
  f.c_ = c;
  f.a_ = a;
  f.b_ = b;
  return f;
}

EtaFamily EtaFamily::tabulated(std::vector<double> u, std::vector<double> eta) {
  if (u.empty() || u.size() != eta.size()) throw DomainError("eta table needs matching nonempty columns");
  if (u.front() != 0.0) throw DomainError("eta table must start at u = 0");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(eta[i]) || !(eta[i] > 0.0)) {
      throw DomainError("eta table entry " + std::to_string(i) + " is not finite and positive");
    }
    if (i > 0 && !(u[i] > u[i - 1])) throw DomainError("eta table u column must increase strictly");
    if (i > 0 && eta[i] > eta[i - 1]) {
      throw DomainError("eta table is not monotone at u = " + std::to_string(u[i]));
    }
  }
  EtaFamily f;
  f.kind_ = Kind::tabulated;
  f.u_ = std::move(u);
  f.eta_ = std::move(eta);
  return f;
}

double EtaFamily::operator()(double u) const {
  switch (kind_) {
    case Kind::constant:
      return c_;
    case Kind::logpower: {
      const double L = std::log(u + 3.0);
      return c_ / (std::pow(L, a_) * std::pow(std::log(L), b_));
    }
    case Kind::tabulated: {
      if (u <= 0.0) return eta_.front();
      if (u >= u_.back()) return eta_.back();
      const auto it = std::upper_bound(u_.begin(), u_.end(), u);
      const std::size_t i = static_cast<std::size_t>(it - u_.begin());
      const double t = (u - u_[i - 1]) / (u_[i] - u_[i - 1]);
      return eta_[i - 1] + t * (eta_[i] - eta_[i - 1]);
    }
  }
  return 0.0;
}

double EtaFamily::derivative(double u) const {
  switch (kind_) {
    case Kind::constant:
      return 0.0;
    case Kind::logpower: {
      const double L = std::log(u + 3.0);
      const double LL = std::log(L);
      return -c_ * (a_ + b_ / LL) / ((u + 3.0) * std::pow(L, a_ + 1.0) * std::pow(LL, b_));
    }
    case Kind::tabulated: {
      if (u >= u_.back()) return 0.0;
      const auto it = std::upper_bound(u_.begin(), u_.end(), std::max(u, 0.0));
      const std::size_t i = static_cast<std::size_t>(it - u_.begin());
      return (eta_[i] - eta_[i - 1]) / (u_[i] - u_[i - 1]);
    }
  }
  return 0.0;
}

// Logpower decays like 1/((u+3) log^{a+1}), constant and tabulated are flat
// eventually.
bool EtaFamily::derivative_vanishes() const noexcept { return true; }

bool EtaFamily::within_region_bounds(std::span<const double> us) const {
  return std::all_of(us.begin(), us.end(), [&](double u) {
    const double e = (*this)(u);
    return e > 0.0 && e <= 0.5;
  });
}

std::string EtaFamily::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case Kind::constant:
      out << "constant:" << c_;
      break;
    case Kind::logpower:
      out << "logpower:" << c_ << ',' << a_ << ',' << b_;
      break;
    case Kind::tabulated:
      out << "table:" << u_.size() << " nodes";
      break;
  }
  return out.str();
}

EtaFamily parse_family(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw FormatError("family spec must be constant:<theta>, logpower:<c>,<a>,<b> or table:<path>");
  }
  const auto kind = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (kind == "constant") return EtaFamily::constant(parse_number(rest));
  if (kind == "logpower") {
    std::vector<double> params;
    std::size_t start = 0;
    while (true) {
      const auto comma = rest.find(',', start);
      params.push_back(parse_number(rest.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (params.size() != 3) throw FormatError("logpower family needs three parameters c,a,b");
    return EtaFamily::logpower(params[0], params[1], params[2]);
  }
  if (kind == "table") return load_family_table(std::string(rest));
  throw FormatError("unknown family kind '" + std::string(kind) + "'");
}

double omega_objective(const EtaFamily& eta, double x, double u) {
  return eta(u) * std::log(x) + std::log(u);
}

double varpi_objective(const EtaFamily& eta, double x, double u) {
  return eta(u) * std::log(x) + u;
}

namespace {

double omega_v_max(const EtaFamily& eta, double x) {
  return std::max(1.0, 2.0 * eta(1.0) * std::log(x));
}

double varpi_u_max(const EtaFamily& eta, double x) {
  return std::max(1.0, 2.0 * eta(0.0) * std::log(x));
}

void check_omega_x(double x) {
  if (!(x >= 3.0) || !std::isfinite(x)) throw DomainError("omega requires x >= 3");
}

void check_varpi_x(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("varpi requires x >= 1");
}

}  // namespace

MinimizationResult omega(const EtaFamily& eta, double x) {
  check_omega_x(x);
  const double log_x = std::log(x);
  auto fn = [&](double v) { return eta(std::exp(v)) * log_x + v; };
  auto to_u = [](double v) { return std::exp(v); };
  return minimize(eta, x, fn, to_u, 0.0, omega_v_max(eta, x));
}

MinimizationResult varpi(const EtaFamily& eta, double x) {
  check_varpi_x(x);
  const double log_x = std::log(x);
  auto fn = [&](double u) { return eta(u) * log_x + u; };
  auto to_u = [](double u) { return u; };
  return minimize(eta, x, fn, to_u, 0.0, varpi_u_max(eta, x));
}

double omega_grid_min(const EtaFamily& eta, double x, std::size_t points) {
  check_omega_x(x);
  const double log_x = std::log(x);
  auto fn = [&](double v) { return eta(std::exp(v)) * log_x + v; };
  return grid_scan(fn, 0.0, omega_v_max(eta, x), std::max<std::size_t>(points, 2)).value;
}

double varpi_grid_min(const EtaFamily& eta, double x, std::size_t points) {
  check_varpi_x(x);
  const double log_x = std::log(x);
  auto fn = [&](double u) { return eta(u) * log_x + u; };
  return grid_scan(fn, 0.0, varpi_u_max(eta, x), std::max<std::size_t>(points, 2)).value;
}

double omega_asymptotic(double c, double a, double b, double x, AsymptoticForm form) {
  EtaFamily::logpower(c, a, b);
  if (!(x >= 16.0)) throw DomainError("omega_asymptotic requires x >= 16");
  const double k = a > 0.0 ? a : 1.0;
  const double loglog = std::log(std::log(x));
  const double inner = k * c * std::pow(1.0 + a, b) * std::log(x) / std::pow(loglog, b);
  const double lead = form == AsymptoticForm::stationary ? (1.0 + a) / k : 1.0 + a;
  return lead * std::pow(inner, omega_asymptotic_exponent(a));
}

double omega_asymptotic_exponent(double a) { return 1.0 / (1.0 + a); }

double critical_point(const EtaFamily& eta, double x) {
  if (eta.kind() != EtaFamily::Kind::logpower) throw DomainError("critical_point needs a logpower family");
  if (!(x >= 16.0)) throw DomainError("critical_point requires x >= 16");
  const double target = 1.0 / std::log(x);
  auto h = [&](double v) {
    const double u = std::exp(v);
    return u * eta.derivative(u) + target;
  };
  double lo = 0.0;
  if (h(lo) >= 0.0) throw BracketError("u eta'(u) + 1/log x has no sign change on u >= 1");
  double hi = omega_v_max(eta, x);
  while (h(hi) <= 0.0) {
    if (hi > 700.0) throw BracketError("no upper bracket for the critical point");
    hi *= 2.0;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi);
}

double BoundShape::argument(double x) const {
  double y = x / arg_divisor;
  if (root) y = std::pow(y, 1.0 / *root);
  return y;
}

double BoundShape::operator()(double x) const {
  double pre = form == Form::linear ? x : x * x;
  if (log_power != 0.0) pre *= std::pow(std::log(x), log_power);
  return pre * std::exp(-C * f(argument(x)));
}

BoundShape make_shape(BoundShape::Form form, double C, ShapeFunction f, std::string f_name) {
  if (!(C > 0.0)) throw DomainError("bound shape constant must be positive");
  if (!f) throw DomainError("bound shape needs a function");
  BoundShape s;
  s.form = form;
  s.C = C;
  s.f = std::move(f);
  s.f_name = std::move(f_name);
  return s;
}

ShapeFunction omega_function(const EtaFamily& eta) {
  return [eta](double x) { return omega(eta, x).value; };
}

ShapeFunction varpi_function(const EtaFamily& eta) {
  return [eta](double x) { return varpi(eta, x).value; };
}

ShapeFunction log_function() {
  return [](double x) { return std::log(x); };
}

BoundShape transfer_forward(const BoundShape& shape_r) {
  if (shape_r.form != BoundShape::Form::linear) {
    throw DomainError("transfer_forward expects a bound of the form x exp(-C f(x))");
  }
  BoundShape out = shape_r;
  out.form = BoundShape::Form::quadratic;
  return out;
}

BoundShape transfer_backward(const BoundShape& shape_r1) {
  if (shape_r1.form != BoundShape::Form::quadratic) {
    throw DomainError("transfer_backward expects a bound of the form x^2 exp(-C g(x))");
  }
  BoundShape out = shape_r1;
  out.form = BoundShape::Form::linear;
  out.C = shape_r1.C / 2.0;
  out.arg_divisor = shape_r1.arg_divisor * 2.0;
  return out;
}

BoundShape bhowmik_ruzsa_shape(ShapeFunction f, std::string f_name, double A) {
  if (!(A > 1.0)) throw DomainError("bhowmik_ruzsa_shape requires A > 1");
  BoundShape s = make_shape(BoundShape::Form::linear, 0.2, f, std::move(f_name));
  s.arg_divisor = 2.0;
  s.root = A;
  s.log_power = 0.4;
  s.delta = [f, A](double n) {
    return std::pow(std::log(n), 0.2) * std::exp(0.4 * f(std::pow(n, 1.0 / A))) / n;
  };
  return s;
}

double envelope_fit(std::span<const ResidualRecord> rows, const BoundShape& shape) {
  if (rows.empty()) throw DomainError("envelope_fit needs at least one row");
  double best = 0.0;
  for (const auto& row : rows) {
    const double s = shape(row.x);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DegenerateEnvelopeError("envelope vanishes at x = " + std::to_string(row.x));
    }
    best = std::max(best, std::abs(row.residual) / s);
  }
  return best;
}

double envelope_fit(std::span<const ResidualRecord> rows) {
  if (rows.empty()) throw DomainError("envelope_fit needs at least one row");
  double best = 0.0;
  for (const auto& row : rows) {
    if (!(row.envelope > 0.0) || !std::isfinite(row.envelope)) {
      throw DegenerateEnvelopeError("envelope vanishes at x = " + std::to_string(row.x));
    }
    best = std::max(best, std::abs(row.residual) / row.envelope);
  }
  return best;
}

GrowthWindowReport check_growth_window(const ShapeFunction& f, std::span<const double> xs,
                                       double implied_constant) {
  GrowthWindowReport rep;
  rep.lower_ratio = std::numeric_limits<double>::infinity();
  for (const double x : xs) {
    if (!(x >= 16.0)) throw DomainError("growth window samples need x >= 16");
    const double log_x = std::log(x);
    const double floor_shape = std::pow(log_x, 0.6) * std::pow(std::log(log_x), 0.2);
    const double fx = f(x);
    rep.lower_ratio = std::min(rep.lower_ratio, fx / floor_shape);
    rep.upper_ratio = std::max(rep.upper_ratio, fx / log_x);
    if ((fx < implied_constant * floor_shape || fx > 0.5 * log_x) && !rep.first_violation) {
      rep.holds = false;
      rep.first_violation = x;
    }
  }
  return rep;
}

}  // namespace glab
