#include "dunkl/reflection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dunkl/special_functions.hpp"

namespace dunkl {

ReflectionConfig::ReflectionConfig(int dim_, std::vector<double> multiplicities_)
    : dim(dim_), multiplicities(std::move(multiplicities_)) {
  if (dim < 1) {
    throw std::domain_error("ReflectionConfig: dim must be >= 1, got " +
                            std::to_string(dim));
  }
  if (static_cast<int>(multiplicities.size()) != dim) {
    throw std::domain_error(
        "ReflectionConfig: need one multiplicity per axis, got " +
        std::to_string(multiplicities.size()) + " for dim " +
        std::to_string(dim));
  }
  for (double k : multiplicities) {
    if (!(k >= 0.0)) {
      throw std::domain_error(
          "ReflectionConfig: multiplicities must be >= 0, got " +
          std::to_string(k));
    }
  }
}

double ReflectionConfig::gamma() const {
  double g = 0.0;
  for (double k : multiplicities) g += 2.0 * k;
  return g;
}

double ReflectionConfig::homogeneous_degree() const { return dim + gamma(); }

double ReflectionConfig::axis_degree(int j) const {
  if (j < 0 || j >= dim)
    throw std::domain_error("ReflectionConfig: axis index out of range");
  return 1.0 + 2.0 * multiplicities[j];
}

double ReflectionConfig::axis_normalization(double k) {
  if (!(k >= 0.0))
    throw std::domain_error("axis_normalization: multiplicity must be >= 0");
  return std::exp(-(2.0 * k + 0.5) * std::log(2.0) - log_gamma(k + 0.5));
}

double ReflectionConfig::normalization() const {
  double c = 1.0;
  for (double k : multiplicities) c *= axis_normalization(k);
  return c;
}

std::vector<double> ReflectionConfig::reflect(const std::vector<double>& x,
                                              int j) const {
  if (j < 0 || j >= dim)
    throw std::domain_error("ReflectionConfig: axis index out of range");
  if (static_cast<int>(x.size()) != dim)
    throw std::domain_error("ReflectionConfig: point has wrong dimension");
  std::vector<double> y = x;
  y[j] = -y[j];
  return y;
}

}  // namespace dunkl
