#include "dunkl/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "dunkl/special_functions.hpp"

namespace dunkl {

double dunkl_kernel_1d(double k, double x, double y) {
  if (!(k >= 0.0))
    throw std::domain_error("dunkl_kernel_1d: multiplicity must be >= 0");
  const double z = x * y;
  return normalized_bessel_i(k - 0.5, z) +
         z / (2.0 * k + 1.0) * normalized_bessel_i(k + 0.5, z);
}

std::complex<double> dunkl_kernel_imag_1d(double k, double x, double y) {
  if (!(k >= 0.0))
    throw std::domain_error("dunkl_kernel_imag_1d: multiplicity must be >= 0");
  const double z = x * y;
  return {normalized_bessel_j(k - 0.5, z),
          z / (2.0 * k + 1.0) * normalized_bessel_j(k + 0.5, z)};
}

double dunkl_kernel(const ReflectionConfig& config,
                    const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (static_cast<int>(x.size()) != config.dim ||
      static_cast<int>(y.size()) != config.dim)
    throw std::domain_error("dunkl_kernel: point has wrong dimension");
  double e = 1.0;
  for (int j = 0; j < config.dim; ++j)
    e *= dunkl_kernel_1d(config.multiplicities[j], x[j], y[j]);
  return e;
}

std::complex<double> dunkl_kernel_imag(const ReflectionConfig& config,
                                       const std::vector<double>& x,
                                       const std::vector<double>& y) {
  if (static_cast<int>(x.size()) != config.dim ||
      static_cast<int>(y.size()) != config.dim)
    throw std::domain_error("dunkl_kernel_imag: point has wrong dimension");
  std::complex<double> e = 1.0;
  for (int j = 0; j < config.dim; ++j)
    e *= dunkl_kernel_imag_1d(config.multiplicities[j], x[j], y[j]);
  return e;
}

double dunkl_laplacian_apply(
    const ReflectionConfig& config,
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != config.dim)
    throw std::domain_error("dunkl_laplacian_apply: point has wrong dimension");
  double norm = 0.0;
  for (double xj : x) norm += xj * xj;
  norm = std::sqrt(norm);
  const double fx = f(x);
  double result = 0.0;
  for (int j = 0; j < config.dim; ++j) {
    const double kj = config.multiplicities[j];
    if (kj > 0.0 && std::fabs(x[j]) < 1e-7 * (1.0 + norm))
      throw std::domain_error(
          "dunkl_laplacian_apply: too close to a reflecting hyperplane");
    // h ~ eps^(1/4) balances truncation against rounding in the second
    // difference
    const double h = 1.2e-4 * (1.0 + std::fabs(x[j]));
    std::vector<double> xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const double fp = f(xp), fm = f(xm);
    result += (fp - 2.0 * fx + fm) / (h * h);
    if (kj > 0.0) {
      result += 2.0 * kj * (fp - fm) / (2.0 * h) / x[j];
      result -= kj * (fx - f(config.reflect(x, j))) / (x[j] * x[j]);
    }
  }
  return result;
}

}  // namespace dunkl
