#pragma once

// Von Mangoldt table with prefix sums for psi and psi_1.
//
//   Lambda(n) = log p  if n = p^k (p prime, k >= 1), else 0
//   psi(x)    = sum_{n <= x} Lambda(n)
//   psi_1(N)  = sum_{n <= N} (N - n) Lambda(n) = sum_{m <= N} psi(m - 1)
//   R(x)      = psi(x) - x,  R_1(x) = psi_1(x) - x^2 / 2
//
// psi and psi_1 are served at integer arguments only. Between integers
// psi is constant and psi_1 is affine: psi_1(N + t) = psi_1(N) + t psi(N)
// for 0 <= t <= 1.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "glab/summation.hpp"

namespace glab {

struct SieveOptions {
  std::size_t segment_size = std::size_t{1} << 20;
  /// Upper bound on the bytes held by one table (three double arrays).
  std::size_t max_bytes = std::size_t{3} << 29;
  Exec exec = Exec::parallel;
};

/// Bytes a table of the given size occupies, excluding the prime-power index.
std::size_t lambda_table_bytes(std::uint64_t n_max);

class LambdaTable {
 public:
  /// Builds prefix sums and the prime-power index from Lambda(1..n_max).
  /// lambda[0] must be 0 and is kept as padding so that lambda[n] = Lambda(n).
  explicit LambdaTable(std::vector<double> lambda);

  std::uint64_t n_max() const noexcept { return n_max_; }

  /// Lambda(n); Lambda(0) = 0.
  double lambda(std::uint64_t n) const;
  double psi(std::uint64_t x) const;
  double psi1(std::uint64_t n) const;

  /// Index n in [0, n_max].
  std::span<const double> lambda_values() const noexcept { return lambda_; }
  std::span<const double> psi_values() const noexcept { return psi_; }
  std::span<const double> psi1_values() const noexcept { return psi1_; }

  /// Ascending n with Lambda(n) > 0.
  std::span<const std::uint32_t> prime_powers() const noexcept { return prime_powers_; }

 private:
  std::uint64_t n_max_;
  std::vector<double> lambda_;
  std::vector<double> psi_;
  std::vector<double> psi1_;
  std::vector<std::uint32_t> prime_powers_;
};

/// Segmented sieve of Eratosthenes. Output is bit-identical for a given
/// n_max regardless of segment size, thread count or Exec.
LambdaTable build_lambda(std::uint64_t n_max, const SieveOptions& options = {});

double psi(const LambdaTable& table, std::uint64_t x);

/// psi_1 from the prefix table (sum of psi(m - 1)).
double psi1(const LambdaTable& table, std::uint64_t n);

/// psi_1 as the weighted sum sum_{n <= N} (N - n) Lambda(n), O(N).
double psi1_direct(const LambdaTable& table, std::uint64_t n);

struct Remainders {
  double r;
  double r1;
};

Remainders remainder(const LambdaTable& table, std::uint64_t x);

/// R and R_1 at integer arguments over a borrowed table.
class RemainderView {
 public:
  explicit RemainderView(const LambdaTable& table) : table_(&table) {}

  double r(std::uint64_t x) const;
  double r1(std::uint64_t x) const;
  std::uint64_t n_max() const noexcept { return table_->n_max(); }

 private:
  const LambdaTable* table_;
};

/// sup |R(u)| over real u in [lo, hi].
///
/// On [k, k+1) R(u) = psi(k) - u decreases with slope -1, so the supremum
/// is the larger of |psi(k) - k| over integers k in [lo, hi] and the
/// left limits |psi(k) - (k + 1)| for k + 1 <= hi.
double max_abs_R(const LambdaTable& table, std::uint64_t lo, std::uint64_t hi,
                 Exec exec = Exec::parallel);

/// max |R(k)| over integers k in [lo, hi] only.
double max_abs_R_integer(const LambdaTable& table, std::uint64_t lo, std::uint64_t hi);

// Binary cache, little-endian:
//   "GLMB" | u16 version = 1 | u64 n_max | n_max x f64 Lambda(1..n_max)
inline constexpr std::uint16_t kCacheVersion = 1;

void save_lambda_cache(const LambdaTable& table, const std::filesystem::path& path);

/// Loads and validates a cache. When expected_n_max is nonzero the stored
/// n_max must match it.
LambdaTable load_lambda_cache(const std::filesystem::path& path,
                              std::uint64_t expected_n_max = 0,
                              const SieveOptions& options = {});

}  // namespace glab
