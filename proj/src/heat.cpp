#include "dunkl/heat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "dunkl/kernel.hpp"
#include "dunkl/parallel.hpp"

#include "dunkl/measure.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"
#include "dunkl/stable_subordinator.hpp"

namespace dunkl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_rank_one(const ReflectionConfig& config, const Axis& grid,
                    const char* who) {
  if (config.dim != 1)
    throw std::invalid_argument(std::string(who) +
                                ": grid route needs a rank-one config, got "
                                "dim " +
                                std::to_string(config.dim));
  if (config.multiplicities[0] != grid.k)
    throw std::invalid_argument(
        std::string(who) + ": config multiplicity " +
        std::to_string(config.multiplicities[0]) +
        " does not match the grid's " + std::to_string(grid.k));
}

double closed_form_at(double D, double t, double r) {
  return std::pow(2.0 * t, -0.5 * D) * std::exp(-r * r / (4.0 * t));
}

// gaussian kernels averaged against the stable rule
double subordinate_at(const SubordinationRule& rule, double D, double r) {
  double sum = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j)
    sum += rule.weights[j] * closed_form_at(D, rule.nodes[j], r);
  return sum;
}

SubordinationRule rule_covering(double alpha, double t, double r_max,
                                int points_per_decade) {
  // gaussian mass at radius r sits near s ~ r^2, so the s-range has to
  // reach well past r_max^2 for the far field to come out right
  const double scale = std::pow(t, 1.0 / alpha);
  const double hi = std::max(1e6, 40.0 * (r_max * r_max + 1.0) / scale);
  return make_subordination_rule(SubordinatorSpec(alpha, t), 1e-8, hi,
                                 points_per_decade);
}

// panel edges for the oscillatory spectral integral: geometric refinement
// toward 0 (the multiplier has a |xi|^2a cusp there), then uniform panels
// narrow enough for the phase r * xi
std::vector<double> hankel_edges(double r, double rho_max) {
  double width = rho_max / 6.0;
  if (r > 0.0) width = std::min(width, 10.0 / r);
  const size_t panels = static_cast<size_t>(std::ceil(rho_max / width));
  if (panels > 20000)
    throw std::runtime_error(
        "frac_heat_kernel_at: spectral route too oscillatory at r=" +
        std::to_string(r) + "; use the subordination route");
  std::vector<double> edges;
  double first = rho_max / static_cast<double>(panels);
  for (int j = 12; j >= 1; --j) edges.push_back(first * std::ldexp(1.0, -j));
  for (size_t p = 1; p <= panels; ++p)
    edges.push_back(rho_max * static_cast<double>(p) /
                    static_cast<double>(panels));
  edges.insert(edges.begin(), 0.0);
  return edges;
}

}  // namespace

KernelSpec::KernelSpec(double t_, double alpha_, HeatRoute route_)
    : t(t_), alpha(alpha_), route(route_) {
  if (!(t > 0.0))
    throw std::domain_error("KernelSpec: t must be positive, got " +
                            std::to_string(t));
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("KernelSpec: alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
  if (route == HeatRoute::closed_form && alpha != 1.0)
    throw std::domain_error(
        "KernelSpec: closed_form route requires alpha = 1, got alpha = " +
        std::to_string(alpha));
}

double heat_kernel(const ReflectionConfig& config, double t,
                   const std::vector<double>& x) {
  if (!(t > 0.0))
    throw std::domain_error("heat_kernel: t must be positive, got " +
                            std::to_string(t));
  if (static_cast<int>(x.size()) != config.dim)
    throw std::invalid_argument("heat_kernel: point has dimension " +
                                std::to_string(x.size()) + ", config has " +
                                std::to_string(config.dim));
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  return closed_form_at(config.homogeneous_degree(), t, std::sqrt(r2));
}

double frac_heat_kernel_at(const ReflectionConfig& config,
                           const KernelSpec& spec, double r,
                           int points_per_decade) {
  const double D = config.homogeneous_degree();
  r = std::fabs(r);
  if (spec.route == HeatRoute::closed_form)
    return closed_form_at(D, spec.t, r);
  if (spec.route == HeatRoute::subordination) {
    // alpha = 1 subordinates through a point mass at t: exact closed form
    if (spec.alpha == 1.0) return closed_form_at(D, spec.t, r);
    SubordinationRule rule =
        rule_covering(spec.alpha, spec.t, r, points_per_decade);
    return subordinate_at(rule, D, r);
  }
  // spectral: radial inversion of the multiplier through the Bessel kernel
  const double nu = 0.5 * D - 1.0;
  const double rho_max = semigroup_xi_max(spec.t, spec.alpha);
  auto f = [&](double rho) {
    return std::exp(-spec.t * std::pow(rho, 2.0 * spec.alpha)) *
           normalized_bessel_j(nu, r * rho);
  };
  return radial_integral(config, f, hankel_edges(r, rho_max), 16);
}

GridFunction frac_heat_kernel(const ReflectionConfig& config,
                              const KernelSpec& spec,
                              std::shared_ptr<const Axis> grid, int threads) {
  check_rank_one(config, *grid, "frac_heat_kernel");
  const double D = config.homogeneous_degree();
  if (spec.route == HeatRoute::closed_form ||
      (spec.route == HeatRoute::subordination && spec.alpha == 1.0))
    return sample_real(grid, [&](double x) {
      return closed_form_at(D, spec.t, x);
    });
  if (spec.route == HeatRoute::subordination) {
    SubordinationRule rule = rule_covering(spec.alpha, spec.t, grid->L, 32);
    return sample_real(
        grid, [&](double x) { return subordinate_at(rule, D, x); });
  }
  const double xi_max = semigroup_xi_max(spec.t, spec.alpha);
  auto spectral = std::make_shared<Axis>(
      make_axis_spectral(grid->k, xi_max, 10.0 / grid->L));
  GridFunction mult = sample_real(spectral, [&](double xi) {
    return std::exp(-spec.t * std::pow(std::fabs(xi), 2.0 * spec.alpha));
  });
  return dunkl_inverse_transform(mult, grid, threads);
}

namespace {

double radial_power_integral(const ReflectionConfig& config,
                             const std::function<double(double)>& h, double p,
                             double sigma) {
  // fixed inner panels through the peak, then geometric extension until the
  // running total stops moving (power tails reach far for p near 1)
  auto hp = [&](double r) { return std::pow(h(r), p); };
  double acc = radial_integral(config, hp, {0.0, 0.125 * sigma}, 32);
  double a = 0.125 * sigma;
  double width = 0.125 * sigma;
  for (int panel = 0; panel < 400; ++panel) {
    const double b = a + width;
    const double part = radial_integral(config, hp, {a, b}, 32);
    acc += part;
    if (b > 8.0 * sigma && std::fabs(part) < 1e-13 * std::fabs(acc))
      return acc;
    a = b;
    width *= 1.5;
  }
  throw std::runtime_error(
      "kernel_lp_norm: radial tail did not converge within 400 panels");
}

}  // namespace

double heat_kernel_mass(const ReflectionConfig& config, double t,
                        double alpha) {
  return kernel_lp_norm(config, t, alpha, 1.0);
}

double kernel_lp_norm(const ReflectionConfig& config, double t, double alpha,
                      double p) {
  if (!(t > 0.0))
    throw std::domain_error("kernel_lp_norm: t must be positive, got " +
                            std::to_string(t));
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("kernel_lp_norm: alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
  if (!(p >= 1.0))
    throw std::domain_error("kernel_lp_norm: p must be >= 1, got " +
                            std::to_string(p));
  const double D = config.homogeneous_degree();
  const double sigma = std::pow(t, 0.5 / alpha);

  if (alpha == 1.0) {
    auto h = [&](double r) { return closed_form_at(D, t, r); };
    if (std::isinf(p)) return h(0.0);
    return std::pow(radial_power_integral(config, h, p, sigma), 1.0 / p);
  }

  // one stable rule reused across all radii; coverage out to the farthest
  // radius the tail integration can reach
  const double r_cap = sigma * std::pow(10.0, 7.0 / alpha);
  SubordinationRule rule = rule_covering(alpha, t, r_cap, 48);
  auto h = [&](double r) { return subordinate_at(rule, D, r); };
  if (std::isinf(p)) return h(0.0);
  return std::pow(radial_power_integral(config, h, p, sigma), 1.0 / p);
}

double heavy_tail_constant(const ReflectionConfig& config, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error(
        "heavy_tail_constant: alpha must lie in (0, 1), got " +
        std::to_string(alpha));
  const double D = config.homogeneous_degree();
  return alpha * std::pow(2.0, 0.5 * D + 2.0 * alpha) *
         gamma_function(0.5 * D + alpha) / gamma_function(1.0 - alpha);
}

double semigroup_xi_max(double t, double alpha, double tail) {
  return std::pow(-std::log(tail) / t, 0.5 / alpha);
}

GridFunction semigroup_apply(const GridFunction& f,
                             std::shared_ptr<const Axis> spectral, double t,
                             double alpha, int threads, double boundary_tol) {
  if (!(t > 0.0))
    throw std::domain_error("semigroup_apply: t must be positive, got " +
                            std::to_string(t));
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("semigroup_apply: alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
  GridFunction g = dunkl_transform(f, spectral, threads, boundary_tol);
  for (size_t s = 0; s < g.size(); ++s)
    g.values[s] *=
        std::exp(-t * std::pow(std::fabs(spectral->nodes[s]), 2.0 * alpha));
  return dunkl_inverse_transform(g, f.axis, threads, boundary_tol);
}

// Opposite-sign x, y lose relative accuracy to cancellation inside the
// kernel factor, but the absolute error stays below eps * (2t)^(-D/2).
double heat_pair_kernel(double k, double t, double x, double y) {
  if (k < 0.0)
    throw std::domain_error("heat_pair_kernel: k must be >= 0, got " +
                            std::to_string(k));
  if (!(t > 0.0))
    throw std::domain_error("heat_pair_kernel: t must be positive, got " +
                            std::to_string(t));
  const double D = 1.0 + 2.0 * k;
  if (k == 0.0)
    return std::pow(2.0 * t, -0.5) *
           std::exp(-(x - y) * (x - y) / (4.0 * t));
  const double z = x * y / (2.0 * t);
  if (std::fabs(z) <= 600.0)
    return std::pow(2.0 * t, -0.5 * D) *
           std::exp(-(x * x + y * y) / (4.0 * t)) *
           dunkl_kernel_1d(k, x, y / (2.0 * t));

  // Far regime, where the kernel series would overflow.  The kernel is the
  // average of e^{zv} over the translation density on [-1, 1]; substituting
  // u for the distance from the dominating endpoint and folding e^{|z|}
  // into the gaussian leaves exponent -(|x| -+ |y|)^2 / 4t and the integral
  //   e^{-|z|} E = b_k int_0^2 e^{-|z| u} u^a (2-u)^b du
  // with {a, b} = {k-1, k} ordered by the sign of z.  A Jacobi rule on
  // [0, 60/|z|] absorbs the u^a cusp; the rest is smooth.
  const double az = std::fabs(z);
  const double a = z > 0.0 ? k - 1.0 : k;
  const double b = z > 0.0 ? k : k - 1.0;
  const double c = 60.0 / az;
  const GaussRule& rule = gauss_rule(0.0, a, 32);
  double s = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = 0.5 * c * (1.0 + rule.nodes[i]);
    s += rule.weights[i] * std::exp(-az * u) * std::pow(2.0 - u, b);
  }
  const double b_k =
      std::exp(log_gamma(k + 0.5) - 0.5 * std::log(kPi) - log_gamma(k));
  const double scaled_kernel = b_k * std::pow(0.5 * c, a + 1.0) * s;
  const double gap = std::fabs(x) - std::fabs(y);
  return std::pow(2.0 * t, -0.5 * D) * std::exp(-gap * gap / (4.0 * t)) *
         scaled_kernel;
}

RadialKernelTable::RadialKernelTable(std::vector<double> r,
                                     std::vector<double> v)
    : r_(std::move(r)), v_(std::move(v)) {
  if (r_.size() != v_.size() || r_.size() < 4)
    throw std::invalid_argument(
        "RadialKernelTable: needs at least 4 matching samples");
  for (size_t i = 1; i < r_.size(); ++i)
    if (!(r_[i] > r_[i - 1]))
      throw std::invalid_argument(
          "RadialKernelTable: abscissae must strictly ascend");
}

double RadialKernelTable::operator()(double r) const {
  r = std::fabs(r);
  if (r > r_.back())
    throw std::out_of_range("RadialKernelTable: r=" + std::to_string(r) +
                            " lies past the table end " +
                            std::to_string(r_.back()));
  // cubic Lagrange on the 4 samples bracketing r
  size_t hi = std::upper_bound(r_.begin(), r_.end(), r) - r_.begin();
  size_t i0 = hi < 2 ? 0 : hi - 2;
  i0 = std::min(i0, r_.size() - 4);
  double out = 0.0;
  for (size_t a = 0; a < 4; ++a) {
    double c = v_[i0 + a];
    for (size_t b = 0; b < 4; ++b) {
      if (b == a) continue;
      c *= (r - r_[i0 + b]) / (r_[i0 + a] - r_[i0 + b]);
    }
    out += c;
  }
  return out;
}

RadialKernelTable frac_heat_table(const ReflectionConfig& config,
                                  const KernelSpec& spec, double r_max) {
  if (!(r_max > 0.0))
    throw std::domain_error("frac_heat_table: r_max must be positive, got " +
                            std::to_string(r_max));
  const double D = config.homogeneous_degree();
  const double sigma = std::pow(spec.t, 0.5 / spec.alpha);
  // spacing sigma/50 through the core, then 2% relative steps; local cubics
  // then hold ~1e-7 relative error in both regimes
  const double step = 0.02 * sigma;
  std::vector<double> r;
  double cur = 0.0;
  while (cur < std::min(4.0 * sigma, r_max)) {
    r.push_back(cur);
    cur += step;
  }
  while (cur < r_max) {
    r.push_back(cur);
    cur = std::max(cur * 1.02, cur + step);
  }
  const double last_gap = r.size() >= 2 ? r[r.size() - 1] - r[r.size() - 2]
                                        : step;
  if (r_max - r.back() < 0.25 * last_gap)
    r.back() = r_max;
  else
    r.push_back(r_max);
  while (r.size() < 4) r.push_back(r.back() + step);

  std::vector<double> v(r.size());
  if (spec.alpha == 1.0) {
    for (size_t i = 0; i < r.size(); ++i)
      v[i] = closed_form_at(D, spec.t, r[i]);
  } else {
    SubordinationRule rule = rule_covering(spec.alpha, spec.t, r_max, 48);
    for (size_t i = 0; i < r.size(); ++i) v[i] = subordinate_at(rule, D, r[i]);
  }
  return RadialKernelTable(std::move(r), std::move(v));
}

GridFunction kernel_convolve(const ReflectionConfig& config,
                             const KernelSpec& spec, const GridFunction& u0,
                             std::shared_ptr<const Axis> out_axis,
                             int threads) {
  check_rank_one(config, *u0.axis, "kernel_convolve");
  if (out_axis->k != u0.axis->k)
    throw std::invalid_argument("kernel_convolve: output multiplicity " +
                                std::to_string(out_axis->k) +
                                " does not match the data's " +
                                std::to_string(u0.axis->k));
  const double k = u0.axis->k;
  std::vector<double> ys, ws;  // support nodes and weight * u0 there
  for (size_t i = 0; i < u0.size(); ++i) {
    const std::complex<double> c = u0.values[i];
    if (std::fabs(c.imag()) > 1e-13 * (1.0 + std::fabs(c.real())))
      throw std::invalid_argument("kernel_convolve: data must be real");
    if (c.real() == 0.0) continue;
    ys.push_back(u0.axis->nodes[i]);
    ws.push_back(u0.axis->weights[i] * c.real());
  }
  GridFunction out;
  out.axis = out_axis;
  out.values.assign(out_axis->size(), 0.0);
  if (ys.empty()) return out;

  if (spec.alpha == 1.0) {
    parallel_for(out_axis->size(), threads, [&](size_t i) {
      const double x = out_axis->nodes[i];
      double acc = 0.0;
      for (size_t j = 0; j < ys.size(); ++j)
        acc += ws[j] * heat_pair_kernel(k, spec.t, x, ys[j]);
      out.values[i] = acc;
    });
    return out;
  }

  double y_max = 0.0;
  for (double y : ys) y_max = std::max(y_max, std::fabs(y));
  const RadialKernelTable table =
      frac_heat_table(config, spec, out_axis->L + y_max + 1.0);

  if (k == 0.0) {
    parallel_for(out_axis->size(), threads, [&](size_t i) {
      const double x = out_axis->nodes[i];
      double acc = 0.0;
      for (size_t j = 0; j < ys.size(); ++j) acc += ws[j] * table(x - ys[j]);
      out.values[i] = acc;
    });
    return out;
  }

  // tau_x h(-y) for even h: the translation density against h(z),
  // z^2 = x^2 + y^2 - 2 x y u; the Jacobi rule carries all of it but b_k
  const GaussRule& rule = gauss_rule(k - 1.0, k, 96);
  const double b_k =
      std::exp(log_gamma(k + 0.5) - 0.5 * std::log(kPi) - log_gamma(k));
  parallel_for(out_axis->size(), threads, [&](size_t i) {
    const double x = out_axis->nodes[i];
    double acc = 0.0;
    for (size_t j = 0; j < ys.size(); ++j) {
      const double y = ys[j];
      double tv = 0.0;
      for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double z2 = x * x + y * y - 2.0 * x * y * rule.nodes[q];
        tv += rule.weights[q] * table(std::sqrt(std::max(z2, 0.0)));
      }
      acc += ws[j] * b_k * tv;
    }
    out.values[i] = acc;
  });
  return out;
}

SemigroupPlan::SemigroupPlan(double k, std::shared_ptr<const Axis> physical,
                             std::shared_ptr<const Axis> spectral, int threads)
    : plan_(k, physical, spectral, threads) {}

GridFunction SemigroupPlan::apply(const GridFunction& f, double t,
                                  double alpha, double boundary_tol) const {
  if (!(t > 0.0))
    throw std::domain_error("SemigroupPlan::apply: t must be positive, got " +
                            std::to_string(t));
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error(
        "SemigroupPlan::apply: alpha must lie in (0, 1], got " +
        std::to_string(alpha));
  double ratio = boundary_ratio(f);
  if (ratio > boundary_tol)
    throw TruncationError(
        "SemigroupPlan::apply: data has not decayed at the axis edge",
        ratio);
  GridFunction g = plan_.forward(f);
  const auto& spectral = plan_.spectral();
  for (size_t s = 0; s < g.size(); ++s)
    g.values[s] *=
        std::exp(-t * std::pow(std::fabs(spectral->nodes[s]), 2.0 * alpha));
  return plan_.inverse(g);
}

}  // namespace dunkl
