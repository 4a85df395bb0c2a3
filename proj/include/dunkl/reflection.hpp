#pragma once

#include <vector>

namespace dunkl {

// Product-of-sign-flips reflection group on R^d with one nonnegative
// multiplicity per coordinate axis.  Roots are normalized to squared length
// 2, so the axis weight is 2^k |x_j|^(2k) and the full weight function is
// their product.
struct ReflectionConfig {
  int dim;
  std::vector<double> multiplicities;

  ReflectionConfig(int dim_, std::vector<double> multiplicities_);

  // sum of 2 k_j; the weight v is homogeneous of this degree
  double gamma() const;
  // homogeneous dimension d + gamma: the measure of B(0,r) scales as r^(this)
  double homogeneous_degree() const;
  // 1 + 2 k_j: homogeneous dimension of axis j alone
  double axis_degree(int j) const;

  // c such that c * v(x) dx has unit Gaussian mass, as a product over axes
  double normalization() const;
  // one-axis factor 1 / (2^(2k+1/2) Gamma(k+1/2)); equals 1/sqrt(2 pi) at k=0
  static double axis_normalization(double k);

  // x with coordinate j sign-flipped
  std::vector<double> reflect(const std::vector<double>& x, int j) const;
};

}  // namespace dunkl
