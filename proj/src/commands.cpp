#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "glab/circle.hpp"
#include "glab/cli.hpp"
#include "glab/explicit_formula.hpp"
#include "glab/goldbach.hpp"
#include "glab/sieve.hpp"
#include "glab/zeros.hpp"
#include "glab/zfr.hpp"

namespace glab::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tolerance(const RunConfig& config, const std::string& name, double fallback) {
  const auto it = config.tolerances.find(name);
  return it == config.tolerances.end() ? fallback : it->second;
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::filesystem::path> cache_path(const RunConfig& config, std::uint64_t n_max) {
  if (config.cache) return config.cache;
  if (const char* dir = std::getenv(kCacheDirEnv); dir != nullptr && *dir != '\0') {
    return std::filesystem::path(dir) / ("lambda_" + std::to_string(n_max) + ".glmb");
  }
  return std::nullopt;
}

LambdaTable obtain_table(const RunConfig& config, std::uint64_t need) {
  const std::uint64_t n_max = config.n_max.value_or(need);
  if (n_max < need) {
    throw ConfigError("--n-max " + std::to_string(n_max) + " is below the " + std::to_string(need) +
                      " this run needs");
  }
  const auto path = cache_path(config, n_max);
  if (path && std::filesystem::exists(*path)) {
    try {
      return load_lambda_cache(*path, n_max);
    } catch (const FormatError& e) {
      std::cerr << "note: rebuilding cache " << path->string() << ": " << e.what() << '\n';
    }
  }
  auto table = build_lambda(n_max);
  if (path) {
    try {
      if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
      save_lambda_cache(table, *path);
    } catch (const std::exception& e) {
      throw DataError(std::string("cannot write cache: ") + e.what());
    }
  }
  return table;
}

ZeroTable obtain_zeros(const RunConfig& config) {
  if (!config.zeros) throw ConfigError("this command needs --zeros <file>");
  ZeroLimit limit;
  limit.max_gamma = config.max_gamma;
  limit.max_zeros = config.max_zeros;
  ZeroTable zeros;
  try {
    zeros = load_zeros(*config.zeros, limit);
  } catch (const FormatError& e) {
    throw DataError(e.what());
  }
  if (!zeros.starts_at_first_zero()) {
    throw DataError("zero table " + config.zeros->string() + " does not start at the first zero");
  }
  return zeros;
}

std::vector<std::uint64_t> grid_or(const RunConfig& config, const std::string& fallback) {
  auto grid = parse_grid(config.grid.value_or(fallback));
  if (grid.empty()) throw ConfigError("grid is empty");
  return grid;
}

std::uint64_t grid_max(const std::vector<std::uint64_t>& grid) {
  return *std::max_element(grid.begin(), grid.end());
}

std::uint64_t grid_min(const std::vector<std::uint64_t>& grid) {
  return *std::min_element(grid.begin(), grid.end());
}

std::string fmt(double v) { return format_double(v); }

ReportRow make_row(std::string experiment, double n, double truth, double formula, double envelope) {
  ReportRow row;
  row.experiment = std::move(experiment);
  row.n = n;
  row.truth = truth;
  row.formula = formula;
  row.residual = truth - formula;
  row.envelope = envelope;
  row.constant = envelope != 0.0 ? std::abs(row.residual) / envelope : std::abs(row.residual);
  return row;
}

// Groups (N, constant) pairs by decade and compares the largest constant in
// each decade with the previous one.
void append_trend(Report& report, const std::string& name,
                  const std::vector<std::pair<double, double>>& points, double limit) {
  std::map<int, double> decade_max;
  for (const auto& [n, c] : points) {
    const int d = static_cast<int>(std::floor(std::log10(n) + 1e-12));
    auto [it, inserted] = decade_max.try_emplace(d, c);
    if (!inserted) it->second = std::max(it->second, c);
  }
  for (auto it = decade_max.begin(); it != decade_max.end(); ++it) {
    if (it == decade_max.begin()) continue;
    const auto prev = std::prev(it);
    ReportRow row = make_row(name, std::pow(10.0, it->first), it->second, prev->second, prev->second);
    row.constant = prev->second > 0.0 ? it->second / prev->second : kInf;
    row.pass = std::isfinite(it->second) && row.constant <= limit;
    row.provenance = {{"decades", std::to_string(prev->first) + "->" + std::to_string(it->first)}};
    report.rows.push_back(std::move(row));
  }
}

void cmd_sieve(const RunConfig& config, Report& report) {
  if (!config.n_max) throw ConfigError("sieve needs --n-max");
  const auto table = obtain_table(config, *config.n_max);
  const std::uint64_t n = table.n_max();
  const double x = static_cast<double>(n);
  const double log_x = std::log(x);
  ReportRow psi_row = make_row("psi", x, table.psi(n), x, std::sqrt(x) * log_x * log_x);
  psi_row.provenance = {{"n_max", std::to_string(n)}};
  report.rows.push_back(std::move(psi_row));

  const double direct = psi1_direct(table, n);
  ReportRow psi1_row = make_row("psi1-routes", x, table.psi1(n), direct, std::max(1.0, std::abs(direct)));
  psi1_row.pass = psi1_row.constant <= tolerance(config, "psi1-routes", 1e-9);
  psi1_row.provenance = {{"n_max", std::to_string(n)}};
  report.rows.push_back(std::move(psi1_row));
}

void cmd_verify_identities(const RunConfig& config, Report& report) {
  const std::uint64_t n_max = config.n_max.value_or(20000);
  const auto grid = grid_or(config, "4:" + std::to_string(n_max));
  if (grid_min(grid) < 4) throw ConfigError("identity grid must start at N >= 4");
  const auto table = obtain_table(config, grid_max(grid));
  const double tol_identity = tolerance(config, "identity", 1e-8);
  const double tol_routes = tolerance(config, "psi20", 1e-8);

  const auto checks = identity_checks(table, grid);
  std::vector<Psi20Sums> routes(grid.size());
  const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < count; ++i) {
    routes[static_cast<std::size_t>(i)] = psi20_sum(table, grid[static_cast<std::size_t>(i)]);
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double n = static_cast<double>(grid[i]);
    const auto& c = checks[i];
    ReportRow row = make_row("identity", n, c.g, c.rhs, std::max(1.0, n * n * 1e-6));
    row.pass = row.constant <= tol_identity;
    report.rows.push_back(std::move(row));

    const auto& r = routes[i];
    ReportRow route = make_row("psi20-routes", n, r.via_definition, r.via_remainder,
                               std::max(1.0, std::abs(r.via_definition)));
    route.pass = route.constant <= tol_routes;
    report.rows.push_back(std::move(route));
  }

  const std::uint64_t conv_n = std::min<std::uint64_t>(grid_max(grid), 10000);
  const auto direct = psi2_direct(table, conv_n);
  const auto fft = psi2_fft(table, conv_n);
  double worst = 0.0;
  double peak = 0.0;
  for (std::uint64_t k = 0; k <= conv_n; ++k) {
    worst = std::max(worst, std::abs(direct.values[k] - fft.values[k]));
    peak = std::max(peak, direct.values[k]);
  }
  ReportRow conv = make_row("psi2-fft", static_cast<double>(conv_n), 0.0, 0.0, 1.0);
  conv.truth = peak;
  conv.formula = peak;
  conv.residual = worst;
  conv.constant = worst;
  conv.pass = worst <= tolerance(config, "psi2-fft", 1e-6);
  conv.provenance = {{"fft_error_bound", fmt(fft.error_bound)}};
  report.rows.push_back(std::move(conv));
}

void cmd_verify_fujii(const RunConfig& config, Report& report) {
  const auto grid = grid_or(config, "1e3:1e6:log1");
  if (grid_min(grid) < 4) throw ConfigError("Fujii grid must start at N >= 4");
  const auto zeros = obtain_zeros(config);
  const auto table = obtain_table(config, grid_max(grid));
  const double height = zeros.max_gamma();
  const double tol = tolerance(config, "fujii", kInf);
  std::vector<std::pair<double, double>> constants;
  for (const auto n : grid) {
    const auto rec = fujii_residual(table, zeros, n, height);
    ReportRow row = make_row("fujii", rec.x, rec.truth, rec.formula, rec.envelope);
    row.pass = std::isfinite(row.constant) && row.constant <= tol;
    row.provenance = {{"T", fmt(rec.height)},
                      {"zeros", std::to_string(rec.pairs_used)},
                      {"alt_constant", fmt(std::abs(rec.residual) / rec.alt_envelope)}};
    constants.emplace_back(rec.x, row.constant);
    report.rows.push_back(std::move(row));
  }
  append_trend(report, "fujii-trend", constants, tolerance(config, "fujii-trend", 3.0));
}

void cmd_verify_psi_explicit(const RunConfig& config, Report& report) {
  const auto grid = grid_or(config, "1e3,1e4,1e5");
  if (grid_min(grid) < 3) throw ConfigError("explicit-formula grid must start at x >= 3");
  const auto heights = parse_real_list(config.heights.value_or("1e2,1e3,1e4"));
  const auto zeros = obtain_zeros(config);
  const auto table = obtain_table(config, grid_max(grid));
  const double tol = tolerance(config, "psi-explicit", 10.0);
  double fitted = 0.0;
  for (const auto x : grid) {
    for (const double t : heights) {
      const auto rec = psi_explicit_residual(table, zeros, x, t);
      ReportRow row = make_row("psi-explicit", rec.x, rec.truth, rec.formula, rec.envelope);
      row.pass = row.constant <= tol;
      row.provenance = {{"T", fmt(t)}, {"zeros", std::to_string(rec.pairs_used)}};
      fitted = std::max(fitted, row.constant);
      report.rows.push_back(std::move(row));
    }
  }
  ReportRow fit = make_row("psi-explicit-fit", static_cast<double>(grid_max(grid)), fitted, tol, 1.0);
  fit.residual = 0.0;
  fit.constant = fitted;
  fit.pass = fitted <= tol;
  report.rows.push_back(std::move(fit));
}

void cmd_verify_smooth(const RunConfig& config, Report& report) {
  const auto grid = grid_or(config, "1e2,1e3,1e4,1e5");
  if (grid_min(grid) < 3) throw ConfigError("smooth grid must start at N >= 3");
  const auto zeros = obtain_zeros(config);
  const double top = static_cast<double>(grid_max(grid));
  const auto table = obtain_table(config, smooth_cutoff(top, default_smooth_eps(top)));
  const double tol_scale = tolerance(config, "F-scale", 10.0);
  std::vector<std::pair<double, double>> psi_constants;
  std::vector<std::pair<double, double>> f_constants;
  for (const auto n : grid) {
    const double nd = static_cast<double>(n);
    const auto avg = smooth_averages(table, n);
    const std::vector<std::pair<std::string, std::string>> prov = {
        {"n_cut", std::to_string(avg.n_cut)}, {"T", fmt(gamma_sum_cutoff())}};

    const auto psi_rec = smoothed_psi_residual(table, zeros, n);
    ReportRow psi_row = make_row("smoothed-psi", nd, psi_rec.truth, psi_rec.formula, psi_rec.envelope);
    psi_row.provenance = prov;
    psi_constants.emplace_back(nd, psi_row.constant);
    report.rows.push_back(std::move(psi_row));

    const auto f_rec = smooth_residual(table, zeros, n);
    ReportRow f_row = make_row("smooth-F", nd, f_rec.truth, f_rec.formula, f_rec.envelope);
    f_row.provenance = prov;
    f_constants.emplace_back(nd, f_row.constant);
    report.rows.push_back(std::move(f_row));

    ReportRow scale = make_row("F-scale", nd, avg.f_n, nd * nd, nd * std::sqrt(nd));
    scale.pass = scale.constant <= tol_scale;
    scale.provenance = prov;
    report.rows.push_back(std::move(scale));
  }
  append_trend(report, "smoothed-psi-trend", psi_constants, tolerance(config, "smooth-trend", 3.0));
  append_trend(report, "smooth-F-trend", f_constants, tolerance(config, "smooth-trend", 3.0));
}

void cmd_verify_contour(const RunConfig& config, Report& report) {
  const auto grid = grid_or(config, "10,50,200,500");
  if (grid_min(grid) < 4) throw ConfigError("contour grid must start at N >= 4");
  const auto table = obtain_table(config, kDefaultCutFactor * grid_max(grid));
  for (const auto n : grid) {
    const auto ctx = make_circle_context(n);
    const auto res = contour_psi20(table, ctx);
    const double truth = psi20_sum(table, n).via_definition;
    ReportRow row = make_row("contour", static_cast<double>(n), truth, res.value,
                             std::max(std::abs(truth), 1e-300));
    row.pass = row.constant <= (n <= 10 ? tolerance(config, "contour-small", 1e-8)
                                        : tolerance(config, "contour", 1e-4));
    row.provenance = {{"n_cut", std::to_string(ctx.n_cut)}, {"M", std::to_string(ctx.M)}};
    report.rows.push_back(row);

    ReportRow imag = make_row("contour-imag", static_cast<double>(n), res.imag, 0.0,
                              std::max(std::abs(res.value), 1e-300));
    imag.pass = imag.constant <= tolerance(config, "contour-imag", 1e-8);
    imag.provenance = row.provenance;
    report.rows.push_back(std::move(imag));
  }
}

void cmd_verify_parseval(const RunConfig& config, Report& report) {
  const auto grid = grid_or(config, "16,100,1000");
  if (grid_min(grid) < 4) throw ConfigError("Parseval grid must start at N >= 4");
  const auto table = obtain_table(config, kDefaultCutFactor * grid_max(grid));
  for (const auto n : grid) {
    const auto ctx = make_circle_context(n);
    const auto res = parseval_check(table, ctx);
    const double nd = static_cast<double>(n);
    const std::vector<std::pair<std::string, std::string>> prov = {
        {"n_cut", std::to_string(ctx.n_cut)}, {"M", std::to_string(ctx.M)}};
    ReportRow row = make_row("parseval", nd, res.rhs, res.lhs, std::abs(res.rhs));
    row.pass = row.constant <= tolerance(config, "parseval", 1e-10);
    row.provenance = prov;
    report.rows.push_back(std::move(row));

    ReportRow scale = make_row("parseval-scale", nd, res.rhs, 0.0, nd * std::log(nd));
    scale.pass = scale.constant <= tolerance(config, "parseval-scale", 3.0);
    scale.provenance = prov;
    report.rows.push_back(std::move(scale));
  }
}

void cmd_zfr(const RunConfig& config, Report& report) {
  const std::string spec = config.family.value_or("logpower:1,1,0");
  EtaFamily eta = EtaFamily::constant(0.5);
  try {
    eta = parse_family(spec);
  } catch (const ParseError& e) {
    throw DataError(e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  auto xs = parse_real_list(config.x_values.value_or("1e3,1e6,1e12"));
  std::sort(xs.begin(), xs.end());
  if (xs.front() < 3.0) throw ConfigError("zfr needs x >= 3");
  const double audit_tol = tolerance(config, "audit", 1e-6);
  const std::vector<std::pair<std::string, std::string>> fam = {{"family", eta.describe()}};

  std::vector<double> log_minus_varpi;
  for (const double x : xs) {
    const auto om = omega(eta, x);
    ReportRow orow = make_row("omega", x, om.audit_min, om.value, 1.0);
    orow.pass = om.value <= om.audit_min + audit_tol;
    orow.provenance = fam;
    orow.provenance.emplace_back("u_star", fmt(om.u_star));
    report.rows.push_back(std::move(orow));

    const auto vp = varpi(eta, x);
    ReportRow vrow = make_row("varpi", x, vp.audit_min, vp.value, 1.0);
    vrow.pass = vp.value <= vp.audit_min + audit_tol;
    vrow.provenance = fam;
    vrow.provenance.emplace_back("u_star", fmt(vp.u_star));
    report.rows.push_back(std::move(vrow));
    log_minus_varpi.push_back(std::log(x) - vp.value);

    if (eta.kind() == EtaFamily::Kind::constant) {
      const double closed = eta.theta() * std::log(x);
      ReportRow c1 = make_row("omega-closed", x, closed, om.value, std::max(1.0, closed));
      c1.pass = c1.constant <= tolerance(config, "closed-form", 1e-12);
      c1.provenance = fam;
      report.rows.push_back(std::move(c1));
      ReportRow c2 = make_row("varpi-closed", x, closed, vp.value, std::max(1.0, closed));
      c2.pass = c2.constant <= tolerance(config, "closed-form", 1e-12);
      c2.provenance = fam;
      report.rows.push_back(std::move(c2));
    }

    if (eta.kind() == EtaFamily::Kind::logpower && x >= 16.0) {
      const double main = omega_asymptotic(eta.c(), eta.a(), eta.b(), x);
      ReportRow arow = make_row("omega-asymptotic", x, om.value, main, main);
      arow.constant = om.value / main;
      const auto band = config.tolerances.find("omega-asymptotic");
      arow.pass = band == config.tolerances.end() || std::abs(arow.constant - 1.0) <= band->second;
      arow.provenance = fam;
      report.rows.push_back(std::move(arow));

      try {
        const double u0 = critical_point(eta, x);
        ReportRow crow = make_row("critical-point", x, om.u_star, u0, u0);
        crow.pass = crow.constant <= tolerance(config, "critical-point", 1e-3);
        crow.provenance = fam;
        report.rows.push_back(std::move(crow));
      } catch (const BracketError&) {
        // Minimum sits at u = 1; there is no interior stationary point.
      }
    }

    for (const double A : {1.5, 2.0, 5.0}) {
      if (x < 2.0) continue;
      const double lhs = varpi(eta, std::pow(x / 2.0, 1.0 / A)).value;
      const double rhs = varpi(eta, x / 2.0).value / A;
      ReportRow trow = make_row("root-inequality", x, lhs, rhs, std::max(1.0, std::abs(rhs)));
      trow.pass = lhs >= rhs - 1e-9 * std::max(1.0, std::abs(rhs));
      trow.provenance = fam;
      trow.provenance.emplace_back("A", fmt(A));
      report.rows.push_back(std::move(trow));
    }
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    ReportRow mrow = make_row("log-minus-varpi", xs[i], log_minus_varpi[i], log_minus_varpi[i - 1], 1.0);
    mrow.pass = log_minus_varpi[i] >= log_minus_varpi[i - 1] - 1e-9;
    mrow.provenance = fam;
    report.rows.push_back(std::move(mrow));
  }
}

std::uint64_t parse_n(const std::string& text) {
  const auto grid = parse_grid(text);
  if (grid.size() != 1 || grid.front() == 0) throw ConfigError("expected a positive integer, got '" + text + "'");
  return grid.front();
}

}  // namespace

Report execute(const RunConfig& config) {
  Report report;
  report.command = config.command;
  if (config.timestamp) report.timestamp = timestamp_now();
  const auto& c = config.command;
  if (c == "sieve") {
    cmd_sieve(config, report);
  } else if (c == "verify-identities") {
    cmd_verify_identities(config, report);
  } else if (c == "verify-fujii") {
    cmd_verify_fujii(config, report);
  } else if (c == "verify-psi-explicit") {
    cmd_verify_psi_explicit(config, report);
  } else if (c == "verify-smooth") {
    cmd_verify_smooth(config, report);
  } else if (c == "verify-contour") {
    cmd_verify_contour(config, report);
  } else if (c == "verify-parseval") {
    cmd_verify_parseval(config, report);
  } else if (c == "zfr") {
    cmd_zfr(config, report);
  } else {
    throw ConfigError("unknown command '" + c + "'");
  }
  return report;
}

int run(const RunConfig& config) {
  Report report;
  try {
    report = execute(config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const CoverageError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const FormatError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::ostringstream text;
  if (config.format == "json") {
    write_json(text, report);
  } else {
    write_csv(text, report);
  }
  if (config.out) {
    std::ofstream out(*config.out, std::ios::trunc);
    if (!out || !(out << text.str())) {
      std::cerr << "data error: cannot write " << config.out->string() << '\n';
      return kDataError;
    }
  } else {
    std::cout << text.str();
  }
  return report.all_pass() ? kPass : kAssertionFailure;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Goldbach-average and explicit-formula experiments"};
  app.name("glab");
  RunConfig config;
  std::string n_max;
  std::string max_gamma;
  std::string max_zeros;
  std::string zeros;
  std::string out;
  std::string cache;
  std::vector<std::string> tolerances;
  bool no_timestamp = false;

  app.add_option("command", config.command, "Subcommand")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--n-max", n_max, "Largest n in the von Mangoldt table");
  app.add_option("--grid", config.grid, "N grid: list a,b,c | a:b | a:b:s | a:b:logK");
  app.add_option("--zeros", zeros, "Zero ordinate file, one gamma per line");
  auto* mg = app.add_option("--max-gamma", max_gamma, "Read zeros up to this height");
  auto* mz = app.add_option("--max-zeros", max_zeros, "Read at most this many zeros");
  mg->excludes(mz);
  app.add_option("--heights", config.heights, "Truncation heights for verify-psi-explicit");
  app.add_option("--family", config.family, "constant:<theta> | logpower:<c>,<a>,<b> | table:<path>");
  app.add_option("--x", config.x_values, "Comma-separated x values for zfr");
  app.add_option("--out", out, "Report path (default stdout)");
  app.add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache", cache, "Lambda cache file");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the generation timestamp");
  app.add_option("--tolerance", tolerances, "Override a tolerance: <experiment>=<value>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (!n_max.empty()) config.n_max = parse_n(n_max);
  if (!max_gamma.empty()) {
    const double t = parse_real_list(max_gamma).at(0);
    if (!(t > 0.0)) throw ConfigError("--max-gamma must be positive");
    config.max_gamma = t;
  }
  if (!max_zeros.empty()) config.max_zeros = parse_n(max_zeros);
  if (!zeros.empty()) config.zeros = zeros;
  if (!out.empty()) config.out = out;
  if (!cache.empty()) config.cache = cache;
  config.timestamp = !no_timestamp;
  for (const auto& t : tolerances) config.tolerances.insert(parse_tolerance(t));
  return config;
}

int main_entry(int argc, const char* const* argv) {
  RunConfig config;
  try {
    config = parse_command_line(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return h.code();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return run(config);
}

}  // namespace glab::cli
