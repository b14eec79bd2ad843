#include "glab/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "glab/errors.hpp"

namespace glab {

namespace {

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

ZeroTable::ZeroTable(std::vector<double> gammas, std::string source, std::optional<double> coverage)
    : gammas_(std::move(gammas)), source_(std::move(source)) {
  for (std::size_t i = 0; i < gammas_.size(); ++i) {
    if (!(gammas_[i] > 0.0) || !std::isfinite(gammas_[i])) {
      throw FormatError("zero ordinate #" + std::to_string(i + 1) + " is not a positive number");
    }
    if (i > 0 && !(gammas_[i] > gammas_[i - 1])) {
      throw FormatError("zero ordinates not strictly increasing at #" + std::to_string(i + 1));
    }
  }
  const double last = gammas_.empty() ? 0.0 : gammas_.back();
  max_gamma_ = coverage.value_or(last);
  if (max_gamma_ < last) throw FormatError("coverage height below the last ordinate");
}

bool ZeroTable::starts_at_first_zero() const noexcept {
  return !gammas_.empty() && std::abs(gammas_.front() - kFirstZeroOrdinate) <= 1e-4;
}

std::size_t ZeroTable::count_upto(double t) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(gammas_.begin(), gammas_.end(), t) - gammas_.begin());
}

void ZeroTable::require_coverage(double t) const {
  if (t > max_gamma_) {
    std::ostringstream msg;
    msg << "zero table '" << source_ << "' covers gamma <= " << max_gamma_ << ", requested "
        << t;
    throw CoverageError(msg.str());
  }
}

ZeroTable parse_zeros(std::string_view text, ZeroLimit limit, std::string source) {
  if (limit.max_zeros && *limit.max_zeros == 0) throw DomainError("zero limit must be positive");
  if (limit.max_gamma && !(*limit.max_gamma > 0.0)) throw DomainError("height limit must be positive");

  std::vector<double> gammas;
  std::optional<double> coverage;
  std::size_t line_no = 0;
  bool saw_value = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const auto field = trim(raw);
    if (field.empty()) continue;

    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size()) {
      throw ParseError("non-numeric zero ordinate '" + std::string(field) + "' in " + source, line_no);
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ParseError("zero ordinate must be positive in " + source, line_no);
    }
    if (saw_value && !(value > gammas.back())) {
      throw ParseError("zero ordinates not strictly increasing in " + source, line_no);
    }
    saw_value = true;
    if (limit.max_gamma && value > *limit.max_gamma) {
      // The file continues past the requested height, so the table is complete up to it.
      coverage = *limit.max_gamma;
      break;
    }
    gammas.push_back(value);
    if (limit.max_zeros && gammas.size() == *limit.max_zeros) break;
  }
  if (!saw_value) throw ParseError("zero table " + source + " is empty", std::max<std::size_t>(line_no, 1));
  return ZeroTable(std::move(gammas), std::move(source), coverage);
}

ZeroTable load_zeros(const std::filesystem::path& path, ZeroLimit limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open zero table: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_zeros(buf.str(), limit, path.string());
}

std::size_t count_in_window(const ZeroTable& table, double t) {
  if (t < 0.0) throw DomainError("window start must be nonnegative");
  table.require_coverage(t + 1.0);
  return table.count_upto(t + 1.0) - table.count_upto(t);
}

}  // namespace glab
