#pragma once

#include <complex>

namespace glab {

/// Complex Gamma function: Lanczos approximation (g = 7, 9 terms) on
/// Re(s) >= 1/2 and the reflection formula below it. Relative error is
/// about 1e-14 on the strip 0 <= Re(s) <= 2 for |Im(s)| <= 100.
/// Throws DomainError at the poles s = 0, -1, -2, ...
std::complex<double> complex_gamma(std::complex<double> s);

/// |Gamma(1/2 + it)| = sqrt(pi / cosh(pi t)).
double gamma_half_line_modulus(double t);

}  // namespace glab
