#pragma once

namespace dunkl {

// Gamma function on (0, inf) via a Lanczos rational approximation
// (g = 7, 9 terms).  Relative accuracy ~1e-13 on [0.1, 50].
// Throws std::domain_error for x <= 0.
double gamma_function(double x);

// log Gamma on (0, inf), same approximation evaluated in log form.
double log_gamma(double x);

// Normalized Bessel function
//   j_nu(z) = Gamma(nu+1) (2/z)^nu J_nu(z) = sum_n (-z^2/4)^n / (n! (nu+1)_n),
// an even entire function with j_nu(0) = 1.  Power series for |z| <= 14,
// Hankel asymptotic expansion beyond (accurate to ~1e-11 for nu <= 5).
// Throws std::domain_error for nu < -1/2.
double normalized_bessel_j(double nu, double z);

// The same series with all-positive terms: j_nu(iz) for real z, i.e. the
// normalized modified Bessel function.  Series-only (no cancellation).
double normalized_bessel_i(double nu, double z);

}  // namespace dunkl
