#pragma once

// Compensated accumulation and the deterministic block reduction shared by
// the OpenMP kernels. Every parallel kernel has a serial twin selected by
// Exec; the parallel path splits work into fixed-size blocks whose partial
// sums are combined in block order, so results do not depend on the number
// of threads.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace glab {

enum class Exec { serial, parallel };

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) noexcept {
    re_.add(z.real());
    im_.add(z.imag());
  }

  void add(const CompensatedComplexSum& other) noexcept {
    re_.add(other.re_);
    im_.add(other.im_);
  }

  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

inline constexpr std::size_t kReductionBlock = std::size_t{1} << 13;

namespace detail {
template <typename T>
struct AccumulatorFor {
  using type = CompensatedSum;
};
template <>
struct AccumulatorFor<std::complex<double>> {
  using type = CompensatedComplexSum;
};
}  // namespace detail

/// Sum of term(i) over i in [0, n).
template <typename T, typename Term>
T reduce_sum(std::size_t n, Term&& term, Exec exec) {
  using Acc = typename detail::AccumulatorFor<T>::type;
  if (exec == Exec::serial || n <= kReductionBlock) {
    Acc acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(term(i));
    return acc.value();
  }
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<Acc> partial(blocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
    Acc acc;
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[static_cast<std::size_t>(b)] = acc;
  }
  Acc total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace glab
