#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dunkl/reflection.hpp"

namespace dunkl {

// One-axis kernels for multiplicity k.  The rank-one kernel at real
// arguments grows like exp(xy); at imaginary first argument it is the
// bounded oscillatory kernel with |value| <= 1.
double dunkl_kernel_1d(double k, double x, double y);
std::complex<double> dunkl_kernel_imag_1d(double k, double x, double y);

// Product over axes.
double dunkl_kernel(const ReflectionConfig& config,
                    const std::vector<double>& x, const std::vector<double>& y);
std::complex<double> dunkl_kernel_imag(const ReflectionConfig& config,
                                       const std::vector<double>& x,
                                       const std::vector<double>& y);

// Differential-difference Laplacian applied by central differences:
//   sum_j f_jj + 2 k_j f_j / x_j - k_j (f(x) - f(sigma_j x)) / x_j^2.
// Throws when x is too close to a reflecting hyperplane for the quotient
// terms to be stable.
double dunkl_laplacian_apply(
    const ReflectionConfig& config,
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x);

}  // namespace dunkl
