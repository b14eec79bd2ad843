#pragma once

// Batch front-end: configuration, grid specs and the subcommand runner.
//
// Exit codes: 0 every row passed, 1 some row failed (report still written),
// 2 configuration error, 3 data error (zero table, cache, eta table).

#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glab/errors.hpp"
#include "glab/report.hpp"

namespace glab::cli {

enum ExitCode : int { kPass = 0, kAssertionFailure = 1, kConfigError = 2, kDataError = 3 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kCacheDirEnv = "GLAB_CACHE_DIR";

struct RunConfig {
  std::string command;
  std::optional<std::uint64_t> n_max;
  std::optional<std::string> grid;
  std::optional<std::filesystem::path> zeros;
  std::optional<double> max_gamma;
  std::optional<std::size_t> max_zeros;
  std::optional<std::string> heights;
  std::optional<std::string> family;
  std::optional<std::string> x_values;
  std::optional<std::filesystem::path> out;
  std::string format = "csv";
  std::optional<std::filesystem::path> cache;
  bool timestamp = true;
  std::map<std::string, double> tolerances;
};

inline const std::vector<std::string> kCommands = {
    "sieve",        "verify-identities", "verify-fujii",    "verify-psi-explicit",
    "verify-smooth", "verify-contour",   "verify-parseval", "zfr"};

/// Integer grid: `a,b,c` list, `a:b` every integer, `a:b:s` step s, or
/// `a:b:logK` with K points per decade from a to b (rounded, deduplicated).
/// Entries accept exponent notation (1e6). Throws ConfigError.
std::vector<std::uint64_t> parse_grid(std::string_view spec);

/// Comma-separated reals (fractions p/q allowed). Throws ConfigError.
std::vector<double> parse_real_list(std::string_view spec);

/// `name=value`. Throws ConfigError.
std::pair<std::string, double> parse_tolerance(std::string_view spec);

/// Parses argv into a RunConfig. Throws ConfigError; help requests throw
/// HelpRequested with the rendered text.
RunConfig parse_command_line(int argc, const char* const* argv);

class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text, int code) : text_(std::move(text)), code_(code) {}
  const char* what() const noexcept override { return text_.c_str(); }
  int code() const noexcept { return code_; }

 private:
  std::string text_;
  int code_;
};

/// Runs one command and returns its report. Throws ConfigError / DataError.
Report execute(const RunConfig& config);

/// Runs, writes the report, maps errors to exit codes.
int run(const RunConfig& config);

int main_entry(int argc, const char* const* argv);

}  // namespace glab::cli
