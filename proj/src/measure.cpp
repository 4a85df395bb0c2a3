#include "dunkl/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

void check_point(const ReflectionConfig& config, const std::vector<double>& x,
                 const char* who) {
  if (static_cast<int>(x.size()) != config.dim)
    throw std::domain_error(std::string(who) + ": point has wrong dimension");
}

// Measure of B(center', rho) over axes j.. of the config, center' the tail
// of center.  Iterated integral with x_j = c_j + rho sin(theta), which makes
// the slice radius rho cos(theta) smooth at the poles.
double slice_volume(const ReflectionConfig& config,
                    const std::vector<double>& center, double rho, int j,
                    double rel_tol) {
  if (j == config.dim) return 1.0;
  if (rho <= 0.0) return 0.0;
  const double k = config.multiplicities[j];
  const double cj = center[j];
  const double axis_c =
      ReflectionConfig::axis_normalization(k) * std::pow(2.0, k);

  auto integrand = [&](double theta) {
    const double ct = std::cos(theta);
    const double x = cj + rho * std::sin(theta);
    return axis_c * std::pow(std::fabs(x), 2.0 * k) * rho * ct *
           slice_volume(config, center, rho * ct, j + 1, rel_tol * 3.0);
  };

  // magnitude scale for the absolute tolerance handed to the adaptive pass
  double scale = std::pow(2.0 * rho, config.dim - j);
  for (int a = j; a < config.dim; ++a) {
    double ka = config.multiplicities[a];
    scale *= ReflectionConfig::axis_normalization(ka) * std::pow(2.0, ka) *
             std::pow(std::fabs(center[a]) + rho, 2.0 * ka);
  }
  const double tol = 0.3 * rel_tol * scale;

  const double half_pi = 1.5707963267948966;
  double sum = 0.0;
  if (std::fabs(cj) < rho && k > 0.0) {
    // axis crossing: the |x|^(2k) cusp sits at theta = asin(-c/rho)
    double theta_c = std::asin(-cj / rho);
    sum += adaptive_quad(integrand, -half_pi, theta_c, 0.5 * tol);
    sum += adaptive_quad(integrand, theta_c, half_pi, 0.5 * tol);
  } else {
    sum = adaptive_quad(integrand, -half_pi, half_pi, tol);
  }
  return sum;
}

}  // namespace

double weight_v(const ReflectionConfig& config, const std::vector<double>& x) {
  check_point(config, x, "weight_v");
  double v = 1.0;
  for (int j = 0; j < config.dim; ++j) {
    double k = config.multiplicities[j];
    if (k > 0.0)
      v *= std::pow(2.0, k) * std::pow(std::fabs(x[j]), 2.0 * k);
  }
  return v;
}

double measure_density(const ReflectionConfig& config,
                       const std::vector<double>& x) {
  return config.normalization() * weight_v(config, x);
}

double ball_volume(const ReflectionConfig& config,
                   const std::vector<double>& center, double r,
                   double rel_tol) {
  check_point(config, center, "ball_volume");
  if (!(r > 0.0)) throw std::domain_error("ball_volume: radius must be positive");
  return slice_volume(config, center, r, 0, rel_tol);
}

double ball_volume_estimate(const ReflectionConfig& config,
                            const std::vector<double>& center, double r) {
  check_point(config, center, "ball_volume_estimate");
  if (!(r > 0.0))
    throw std::domain_error("ball_volume_estimate: radius must be positive");
  double e = std::pow(2.0 * r, config.dim);
  for (int j = 0; j < config.dim; ++j) {
    double k = config.multiplicities[j];
    e *= ReflectionConfig::axis_normalization(k) * std::pow(2.0, k) *
         std::pow(std::fabs(center[j]) + r, 2.0 * k);
  }
  return e;
}

double box_mass(const ReflectionConfig& config, const std::vector<double>& L) {
  check_point(config, L, "box_mass");
  double m = 1.0;
  for (int j = 0; j < config.dim; ++j) {
    double k = config.multiplicities[j];
    if (!(L[j] > 0.0)) throw std::domain_error("box_mass: half-widths must be positive");
    m *= ReflectionConfig::axis_normalization(k) * std::pow(2.0, k) * 2.0 *
         std::pow(L[j], 2.0 * k + 1.0) / (2.0 * k + 1.0);
  }
  return m;
}

double radial_constant(const ReflectionConfig& config) {
  const double D = config.homogeneous_degree();
  return std::exp((1.0 - 0.5 * D) * std::log(2.0) - log_gamma(0.5 * D));
}

double radial_integral(const ReflectionConfig& config,
                       const std::function<double(double)>& f,
                       const std::vector<double>& edges, int nodes_per_panel) {
  if (edges.size() < 2)
    throw std::domain_error("radial_integral: need at least one panel");
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    if (!(edges[i] < edges[i + 1]) || edges[i] < 0.0)
      throw std::domain_error("radial_integral: edges must ascend from >= 0");
  const double D = config.homogeneous_degree();
  double sum = 0.0;
  size_t first = 0;
  if (edges[0] == 0.0) {
    // innermost panel: Gauss-Jacobi absorbs the r^(D-1) factor exactly
    const double e = edges[1];
    const GaussRule& gj = gauss_rule(0.0, D - 1.0, nodes_per_panel);
    double part = 0.0;
    for (size_t i = 0; i < gj.nodes.size(); ++i)
      part += gj.weights[i] * f(0.5 * e * (1.0 + gj.nodes[i]));
    sum += std::pow(0.5 * e, D) * part;
    first = 1;
  }
  const GaussRule& gl = gauss_rule(0.0, 0.0, nodes_per_panel);
  for (size_t p = first; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double part = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double r = c + h * gl.nodes[i];
      part += gl.weights[i] * f(r) * std::pow(r, D - 1.0);
    }
    sum += h * part;
  }
  return radial_constant(config) * sum;
}

}  // namespace dunkl
