#include "glab/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "glab/errors.hpp"

namespace glab {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t q = p * p; q <= limit; q += p) composite[q] = 1;
  }
  return primes;
}

void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base,
                   std::vector<std::uint8_t>& composite, std::vector<double>& lambda) {
  composite.assign(hi - lo, 0);
  for (const std::uint64_t p : base) {
    if (p * p >= hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
  }
  for (std::uint64_t n = lo; n < hi; ++n) {
    if (!composite[n - lo]) lambda[n] = std::log(static_cast<double>(n));
  }
}

void check_index(std::uint64_t x, std::uint64_t n_max) {
  if (x > n_max) {
    throw RangeError("argument " + std::to_string(x) + " exceeds table n_max " +
                     std::to_string(n_max));
  }
}

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  std::array<char, sizeof(T)> bytes{};
  if (!in.read(bytes.data(), bytes.size())) return false;
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  std::memcpy(&value, bytes.data(), sizeof(T));
  return true;
}

void check_capacity(std::uint64_t n_max, const SieveOptions& options) {
  if (n_max == 0) throw CapacityError("n_max must be at least 1");
  if (n_max >= std::numeric_limits<std::uint32_t>::max()) {
    throw CapacityError("n_max " + std::to_string(n_max) + " exceeds the 32-bit index limit");
  }
  if (lambda_table_bytes(n_max) > options.max_bytes) {
    throw CapacityError("n_max " + std::to_string(n_max) + " needs " +
                        std::to_string(lambda_table_bytes(n_max)) +
                        " bytes, over the configured budget of " +
                        std::to_string(options.max_bytes));
  }
}

}  // namespace

std::size_t lambda_table_bytes(std::uint64_t n_max) { return 3 * sizeof(double) * (n_max + 1); }

LambdaTable::LambdaTable(std::vector<double> lambda) : lambda_(std::move(lambda)) {
  if (lambda_.size() < 2) throw CapacityError("table needs at least Lambda(1)");
  if (lambda_[0] != 0.0) throw FormatError("Lambda(0) padding must be zero");
  n_max_ = lambda_.size() - 1;
  psi_.resize(lambda_.size());
  psi1_.resize(lambda_.size());
  CompensatedSum psi_acc;
  CompensatedSum psi1_acc;
  psi_[0] = 0.0;
  psi1_[0] = 0.0;
  for (std::uint64_t n = 1; n <= n_max_; ++n) {
    psi1_acc.add(psi_[n - 1]);
    psi1_[n] = psi1_acc.value();
    psi_acc.add(lambda_[n]);
    psi_[n] = psi_acc.value();
    if (lambda_[n] > 0.0) prime_powers_.push_back(static_cast<std::uint32_t>(n));
  }
}

double LambdaTable::lambda(std::uint64_t n) const {
  check_index(n, n_max_);
  return lambda_[n];
}

double LambdaTable::psi(std::uint64_t x) const {
  check_index(x, n_max_);
  return psi_[x];
}

double LambdaTable::psi1(std::uint64_t n) const {
  check_index(n, n_max_);
  return psi1_[n];
}

LambdaTable build_lambda(std::uint64_t n_max, const SieveOptions& options) {
  check_capacity(n_max, options);
  const std::uint64_t segment = std::max<std::uint64_t>(options.segment_size, 1024);
  const auto base = small_primes(isqrt(n_max));

  std::vector<double> lambda(n_max + 1, 0.0);
  const std::uint64_t first = 2;
  const std::uint64_t end = n_max + 1;
  const std::uint64_t segments = end > first ? (end - first + segment - 1) / segment : 0;

  if (options.exec == Exec::parallel) {
#pragma omp parallel
    {
      std::vector<std::uint8_t> composite;
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(segments); ++s) {
        const std::uint64_t lo = first + static_cast<std::uint64_t>(s) * segment;
        sieve_segment(lo, std::min(lo + segment, end), base, composite, lambda);
      }
    }
  } else {
    std::vector<std::uint8_t> composite;
    for (std::uint64_t s = 0; s < segments; ++s) {
      const std::uint64_t lo = first + s * segment;
      sieve_segment(lo, std::min(lo + segment, end), base, composite, lambda);
    }
  }

  // Proper prime powers p^k, k >= 2, are composite and only exist for p <= sqrt(n_max).
  for (const std::uint64_t p : base) {
    const double log_p = std::log(static_cast<double>(p));
    for (std::uint64_t q = p * p; q <= n_max; q *= p) {
      lambda[q] = log_p;
      if (q > n_max / p) break;
    }
  }
  return LambdaTable(std::move(lambda));
}

double psi(const LambdaTable& table, std::uint64_t x) { return table.psi(x); }

double psi1(const LambdaTable& table, std::uint64_t n) { return table.psi1(n); }

double psi1_direct(const LambdaTable& table, std::uint64_t n) {
  check_index(n, table.n_max());
  CompensatedSum acc;
  for (const std::uint64_t m : table.prime_powers()) {
    if (m > n) break;
    acc.add(static_cast<double>(n - m) * table.lambda_values()[m]);
  }
  return acc.value();
}

Remainders remainder(const LambdaTable& table, std::uint64_t x) {
  const double xd = static_cast<double>(x);
  return {table.psi(x) - xd, table.psi1(x) - 0.5 * xd * xd};
}

double RemainderView::r(std::uint64_t x) const { return remainder(*table_, x).r; }

double RemainderView::r1(std::uint64_t x) const { return remainder(*table_, x).r1; }

double max_abs_R(const LambdaTable& table, std::uint64_t lo, std::uint64_t hi, Exec exec) {
  if (lo > hi) throw RangeError("empty range for max_abs_R");
  check_index(hi, table.n_max());
  const auto psi_values = table.psi_values();
  const auto count = static_cast<std::int64_t>(hi - lo + 1);
  double best = 0.0;
  auto at = [&](std::uint64_t k) {
    const double pk = psi_values[k];
    const double kd = static_cast<double>(k);
    double v = std::abs(pk - kd);
    if (k + 1 <= hi) v = std::max(v, std::abs(pk - (kd + 1.0)));
    return v;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for reduction(max : best) schedule(static)
    for (std::int64_t i = 0; i < count; ++i) best = std::max(best, at(lo + static_cast<std::uint64_t>(i)));
  } else {
    for (std::int64_t i = 0; i < count; ++i) best = std::max(best, at(lo + static_cast<std::uint64_t>(i)));
  }
  return best;
}

double max_abs_R_integer(const LambdaTable& table, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw RangeError("empty range for max_abs_R_integer");
  check_index(hi, table.n_max());
  double best = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    best = std::max(best, std::abs(table.psi_values()[k] - static_cast<double>(k)));
  }
  return best;
}

void save_lambda_cache(const LambdaTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open cache for writing: " + path.string());
  out.write("GLMB", 4);
  put_le<std::uint16_t>(out, kCacheVersion);
  put_le<std::uint64_t>(out, table.n_max());
  const auto values = table.lambda_values();
  for (std::uint64_t n = 1; n <= table.n_max(); ++n) {
    put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(values[n]));
  }
  if (!out) throw FormatError("write failed: " + path.string());
}

LambdaTable load_lambda_cache(const std::filesystem::path& path, std::uint64_t expected_n_max,
                              const SieveOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open cache: " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || std::string_view(magic.data(), 4) != "GLMB") {
    throw FormatError("bad cache magic in " + path.string());
  }
  std::uint16_t version = 0;
  std::uint64_t n_max = 0;
  if (!get_le(in, version) || version != kCacheVersion) {
    throw FormatError("unsupported cache version in " + path.string());
  }
  if (!get_le(in, n_max)) throw FormatError("truncated cache header in " + path.string());
  if (expected_n_max != 0 && n_max != expected_n_max) {
    throw FormatError("cache holds n_max " + std::to_string(n_max) + ", expected " +
                      std::to_string(expected_n_max));
  }
  check_capacity(n_max, options);

  const auto here = in.tellg();
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::uint64_t>(in.tellg() - here);
  if (size != n_max * sizeof(double)) {
    throw FormatError("cache payload is " + std::to_string(size) + " bytes, expected " +
                      std::to_string(n_max * sizeof(double)));
  }
  in.seekg(here);

  std::vector<double> lambda(n_max + 1, 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::uint64_t bits = 0;
    if (!get_le(in, bits)) throw FormatError("truncated cache payload");
    lambda[n] = std::bit_cast<double>(bits);
    if (!(lambda[n] >= 0.0) || !std::isfinite(lambda[n])) {
      throw FormatError("invalid Lambda value at n = " + std::to_string(n));
    }
  }
  return LambdaTable(std::move(lambda));
}

}  // namespace glab
