#pragma once

// Tables of positive ordinates gamma of nontrivial zeta zeros. Every zero is
// taken on the critical line (beta = 1/2): published tables verify this up
// to their height, and conjugate zeros are handled by symmetry downstream.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glab {

inline constexpr double kFirstZeroOrdinate = 14.134725141734693;

class ZeroTable {
 public:
  ZeroTable() = default;

  /// Validates ordering and positivity. coverage is the height up to which
  /// the table is known to be complete; it defaults to the last ordinate.
  ZeroTable(std::vector<double> gammas, std::string source,
            std::optional<double> coverage = std::nullopt);

  std::span<const double> gammas() const noexcept { return gammas_; }
  std::size_t size() const noexcept { return gammas_.size(); }
  bool empty() const noexcept { return gammas_.empty(); }
  const std::string& source() const noexcept { return source_; }

  /// Every zero with 0 < gamma <= max_gamma() is present.
  double max_gamma() const noexcept { return max_gamma_; }

  /// True when the first ordinate is the first zeta zero (within 1e-4).
  bool starts_at_first_zero() const noexcept;

  /// Number of ordinates with gamma <= t.
  std::size_t count_upto(double t) const noexcept;

  /// Throws CoverageError when t > max_gamma().
  void require_coverage(double t) const;

 private:
  std::vector<double> gammas_;
  std::string source_;
  double max_gamma_ = 0.0;
};

/// How much of a zero file to read.
struct ZeroLimit {
  std::optional<std::size_t> max_zeros;
  std::optional<double> max_gamma;

  static ZeroLimit count(std::size_t k) { return {k, std::nullopt}; }
  static ZeroLimit height(double t) { return {std::nullopt, t}; }
  static ZeroLimit all() { return {}; }
};

/// Reads an ASCII table, one decimal ordinate per line, ascending (the
/// Odlyzko layout). Leading and trailing blanks and blank lines are ignored;
/// parsing is locale-independent. Throws ParseError with the line number
/// for non-numeric, non-positive or non-increasing entries and for an empty
/// file.
ZeroTable load_zeros(const std::filesystem::path& path, ZeroLimit limit = ZeroLimit::all());

/// Same parser over in-memory text; source names the origin in messages.
ZeroTable parse_zeros(std::string_view text, ZeroLimit limit = ZeroLimit::all(),
                      std::string source = "<memory>");

/// Number of ordinates in (t, t + 1].
std::size_t count_in_window(const ZeroTable& table, double t);

}  // namespace glab
