#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "glab/cli.hpp"

namespace glab::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double den = parse_real(text.substr(slash + 1));
    if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return parse_real(text.substr(0, slash)) / den;
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_count(std::string_view text) {
  const double v = parse_real(text);
  if (v < 0.0 || v > 9007199254740992.0 || v != std::floor(v)) {
    throw ConfigError("expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::vector<std::uint64_t> parse_grid(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ConfigError("empty grid spec");
  std::vector<std::uint64_t> out;
  if (spec.find(':') == std::string_view::npos) {
    for (const auto part : split(spec, ',')) out.push_back(parse_count(part));
    return out;
  }
  const auto parts = split(spec, ':');
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("grid range must be a:b, a:b:s or a:b:logK");
  const std::uint64_t a = parse_count(parts[0]);
  const std::uint64_t b = parse_count(parts[1]);
  if (a > b) throw ConfigError("grid range start exceeds its end");
  if (parts.size() == 3 && parts[2].starts_with("log")) {
    const std::uint64_t k = parse_count(parts[2].substr(3));
    if (k == 0 || a == 0) throw ConfigError("log grid needs K >= 1 and a >= 1");
    for (std::uint64_t i = 0;; ++i) {
      const double v = static_cast<double>(a) * std::pow(10.0, static_cast<double>(i) / static_cast<double>(k));
      if (v > static_cast<double>(b) * (1.0 + 1e-12)) break;
      const auto n = static_cast<std::uint64_t>(std::llround(v));
      if (out.empty() || out.back() != n) out.push_back(n);
    }
    return out;
  }
  const std::uint64_t step = parts.size() == 3 ? parse_count(parts[2]) : 1;
  if (step == 0) throw ConfigError("grid step must be positive");
  if ((b - a) / step > 100'000'000) throw ConfigError("grid has more than 1e8 points");
  for (std::uint64_t n = a; n <= b; n += step) out.push_back(n);
  return out;
}

std::vector<double> parse_real_list(std::string_view spec) {
  std::vector<double> out;
  for (const auto part : split(spec, ',')) out.push_back(parse_real(part));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::pair<std::string, double> parse_tolerance(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("tolerance must be <experiment>=<value>, got '" + std::string(spec) + "'");
  }
  const double v = parse_real(spec.substr(eq + 1));
  if (!(v > 0.0)) throw ConfigError("tolerance must be positive");
  return {std::string(trim(spec.substr(0, eq))), v};
}

}  // namespace glab::cli
