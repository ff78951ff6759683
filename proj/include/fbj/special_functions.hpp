#pragma once

// Scalar special functions used throughout the library. All routines are
// pure and thread-safe; invalid arguments raise fbj::DomainError.

namespace fbj {

/// ln Gamma(x) for x > 0.
///
/// Lanczos approximation with g = 671/128 and 14 coefficients (the set
/// published in Numerical Recipes, 3rd ed., `gammln`). Near the zeros of
/// ln Gamma at x = 1 and x = 2 a Taylor series in (x - 1) built from zeta
/// values is used instead, so the result keeps full relative accuracy there.
double log_gamma(double x);

/// Gamma(a) / Gamma(b), evaluated as exp(log_gamma(a) - log_gamma(b)).
double gamma_ratio(double a, double b);

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

/// Bessel function of the first kind J_nu(x) for nu > -1, x >= 0, from its
/// power series. Intended for moderate x (x <= a few units).
double bessel_j(double nu, double x);

/// Mittag-Leffler function E_sigma(z) = sum z^n / Gamma(sigma n + 1), by
/// direct summation. Supported range |z| <= 50.
double mittag_leffler(double sigma, double z);

}  // namespace fbj
