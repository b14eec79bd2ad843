#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>
#include <stdexcept>

#include "glab/errors.hpp"

namespace glab::fft {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw CapacityError("fftw_malloc failed for " + std::to_string(n) + " elements");
  return std::unique_ptr<T[], FftwFree>(p);
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {
    if (plan_ == nullptr) throw CapacityError("FFTW could not create a plan");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

constexpr std::size_t kMaxLength = std::size_t{1} << 30;

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> self_convolution(std::span<const double> a, std::size_t out_len) {
  const std::size_t len = next_pow2(std::max<std::size_t>(2 * a.size(), 2));
  if (len > kMaxLength) throw CapacityError("transform length " + std::to_string(len) + " too large");
  const std::size_t half = len / 2 + 1;
  auto real = fftw_buffer<double>(len);
  auto spec = fftw_buffer<fftw_complex>(half);
  std::unique_ptr<Plan> forward;
  std::unique_ptr<Plan> backward;
  {
    std::lock_guard lock(planner_mutex());
    forward = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(static_cast<int>(len), real.get(), spec.get(), FFTW_ESTIMATE));
    backward = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(static_cast<int>(len), spec.get(), real.get(), FFTW_ESTIMATE));
  }
  std::fill(real.get(), real.get() + len, 0.0);
  std::copy(a.begin(), a.end(), real.get());
  forward->execute();
  for (std::size_t k = 0; k < half; ++k) {
    const double re = spec[k][0];
    const double im = spec[k][1];
    spec[k][0] = re * re - im * im;
    spec[k][1] = 2.0 * re * im;
  }
  backward->execute();
  std::vector<double> out(out_len, 0.0);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t k = 0; k < std::min(out_len, len); ++k) out[k] = real[k] * scale;
  return out;
}

std::vector<std::complex<double>> sample_on_circle(std::span<const double> coeffs, std::size_t m) {
  if (coeffs.size() > m) throw AliasingError("more coefficients than sample points");
  if (m > kMaxLength) throw CapacityError("transform length " + std::to_string(m) + " too large");
  const std::size_t half = m / 2 + 1;
  auto real = fftw_buffer<double>(m);
  auto spec = fftw_buffer<fftw_complex>(half);
  std::unique_ptr<Plan> forward;
  {
    std::lock_guard lock(planner_mutex());
    forward = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(static_cast<int>(m), real.get(), spec.get(), FFTW_ESTIMATE));
  }
  std::fill(real.get(), real.get() + m, 0.0);
  std::copy(coeffs.begin(), coeffs.end(), real.get());
  forward->execute();
  // FFTW computes exp(-2 pi i n j / m); real input gives X_j = conj(F_j) = F_{m-j}.
  std::vector<std::complex<double>> out(m);
  for (std::size_t j = 0; j < half; ++j) out[j] = {spec[j][0], -spec[j][1]};
  for (std::size_t j = half; j < m; ++j) out[j] = {spec[m - j][0], spec[m - j][1]};
  return out;
}

}  // namespace glab::fft
