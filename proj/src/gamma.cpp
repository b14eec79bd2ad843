#include "glab/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "glab/errors.hpp"

namespace glab {

namespace {

constexpr double kG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> lanczos(std::complex<double> s) {
  const std::complex<double> z = s - 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kG + 0.5;
  const double sqrt_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return sqrt_two_pi * std::exp((z + 0.5) * std::log(t) - t) * x;
}

}  // namespace

std::complex<double> complex_gamma(std::complex<double> s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw DomainError("Gamma has a pole at s = " + std::to_string(s.real()));
  }
  if (s.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * s) * lanczos(1.0 - s));
  }
  return lanczos(s);
}

double gamma_half_line_modulus(double t) {
  const double pi = std::numbers::pi;
  return std::sqrt(pi / std::cosh(pi * t));
}

}  // namespace glab
