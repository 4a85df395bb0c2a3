#include "dunkl/translation.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dunkl/kernel.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double dunkl_translate_pointwise(double k,
                                 const std::function<double(double)>& f,
                                 double x, double y, int n) {
  if (k < 0.0)
    throw std::domain_error("dunkl_translate_pointwise: k must be >= 0, got " +
                            std::to_string(k));
  if (n < 1)
    throw std::domain_error("dunkl_translate_pointwise: n must be >= 1");
  if (k == 0.0) return f(x + y);

  // b_k normalizes the density to total mass 1
  const double b_k = std::exp(log_gamma(k + 0.5) - 0.5 * std::log(kPi) -
                              log_gamma(k));
  const GaussRule& rule = gauss_rule(k - 1.0, k, n);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    // z^2 >= (|x| - |y|)^2, so the root is safe; clamp rounding dust
    const double z2 = x * x + y * y + 2.0 * x * y * u;
    const double z = std::sqrt(std::max(z2, 0.0));
    const double fp = f(z), fm = f(-z);
    const double even = 0.5 * (fp + fm);
    const double odd = 0.5 * (fp - fm);
    const double ratio = z > 0.0 ? (x + y) / z : 0.0;
    acc += rule.weights[i] * (even + ratio * odd);
  }
  return b_k * acc;
}

GridFunction dunkl_translate(const GridFunction& f, double x,
                             std::shared_ptr<const Axis> spectral,
                             int threads, double boundary_tol) {
  GridFunction g = dunkl_transform(f, spectral, threads, boundary_tol);
  const double k = f.axis->k;
  for (size_t s = 0; s < g.size(); ++s)
    g.values[s] *= dunkl_kernel_imag_1d(k, x, spectral->nodes[s]);
  return dunkl_inverse_transform(g, f.axis, threads, boundary_tol);
}

GridFunction dunkl_convolve(const GridFunction& f, const GridFunction& g,
                            std::shared_ptr<const Axis> spectral,
                            int threads, double boundary_tol) {
  if (f.axis != g.axis)
    throw std::invalid_argument(
        "dunkl_convolve: factors must share one physical axis");
  GridFunction ff = dunkl_transform(f, spectral, threads, boundary_tol);
  GridFunction gg = dunkl_transform(g, spectral, threads, boundary_tol);
  for (size_t s = 0; s < ff.size(); ++s) ff.values[s] *= gg.values[s];
  return dunkl_inverse_transform(ff, f.axis, threads, boundary_tol);
}

YoungReport young_check(const GridFunction& f, const GridFunction& g,
                        std::shared_ptr<const Axis> spectral, double p,
                        double q, double r, int threads) {
  auto inv = [](double e) { return std::isinf(e) ? 0.0 : 1.0 / e; };
  if (!(p >= 1.0) || !(q >= 1.0) || !(r >= 1.0))
    throw std::domain_error("young_check: exponents must be >= 1, got p=" +
                            std::to_string(p) + " q=" + std::to_string(q) +
                            " r=" + std::to_string(r));
  if (std::fabs(inv(p) + inv(q) - 1.0 - inv(r)) > 1e-12)
    throw std::domain_error(
        "young_check: 1/p + 1/q = 1 + 1/r violated for p=" +
        std::to_string(p) + " q=" + std::to_string(q) +
        " r=" + std::to_string(r));

  YoungReport rep;
  rep.p = p;
  rep.q = q;
  rep.r = r;
  rep.norm_f = lp_norm(f, p);
  rep.norm_g = lp_norm(g, q);
  GridFunction conv = dunkl_convolve(f, g, spectral, threads);
  rep.norm_conv = lp_norm(conv, r);
  rep.bound = rep.norm_f * rep.norm_g;
  rep.ratio = rep.bound > 0.0 ? rep.norm_conv / rep.bound
                              : (rep.norm_conv > 0.0 ? HUGE_VAL : 0.0);
  rep.holds = rep.norm_conv <= rep.bound * (1.0 + 1e-6);
  return rep;
}

}  // namespace dunkl
