#include "dunkl/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "dunkl/stable_subordinator.hpp"

namespace dunkl {

namespace {

void check_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error(std::string(who) +
                            ": alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
}

void check_exponent(double p, const char* who) {
  if (!(p >= 1.0))
    throw std::domain_error(std::string(who) + ": p must be >= 1, got " +
                            std::to_string(p));
}

void check_times(const std::vector<double>& t, const char* who) {
  if (t.empty())
    throw std::domain_error(std::string(who) + ": empty t grid");
  if (!(t.front() > 0.0))
    throw std::domain_error(std::string(who) + ": t must be positive, got " +
                            std::to_string(t.front()));
  for (size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw std::domain_error(std::string(who) +
                              ": t grid must strictly increase");
}

double mass_of(const GridFunction& f, const char* who) {
  const std::complex<double> m = integral(f);
  if (std::fabs(m.imag()) > 1e-12 * (1.0 + std::fabs(m.real())))
    throw std::invalid_argument(std::string(who) + ": data must be real");
  return m.real();
}

// zero out relatively negligible samples so the kernel convolution only
// visits the effective support
GridFunction pruned(const GridFunction& f) {
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  GridFunction g = f;
  for (auto& v : g.values)
    if (std::abs(v) < 1e-18 * peak) v = 0.0;
  return g;
}

// || flow(s) - mass * kernel(s) ||_p for the flow of u0 at time s
double flow_gap_norm(const ReflectionConfig& config, const KernelSpec& spec,
                     const GridFunction& u0, double mass, double p,
                     int threads) {
  GridFunction flow = kernel_convolve(config, spec, u0, u0.axis, threads);
  GridFunction h = frac_heat_kernel(config, spec, u0.axis, threads);
  for (size_t i = 0; i < flow.size(); ++i)
    flow.values[i] -= mass * h.values[i];
  return lp_norm(flow, p);
}

}  // namespace

double first_moment(const GridFunction& f) {
  double acc = 0.0;
  for (size_t i = 0; i < f.size(); ++i)
    acc += f.axis->weights[i] * std::abs(f.values[i]) *
           std::fabs(f.axis->nodes[i]);
  return acc;
}

double decay_exponent(const ReflectionConfig& config, double alpha, double p) {
  check_alpha(alpha, "decay_exponent");
  check_exponent(p, "decay_exponent");
  const double inv_conjugate = std::isinf(p) ? 1.0 : 1.0 - 1.0 / p;
  return config.homogeneous_degree() * inv_conjugate / (2.0 * alpha);
}

double auto_half_width(double alpha, double t_max) {
  check_alpha(alpha, "auto_half_width");
  if (!(t_max > 0.0))
    throw std::domain_error("auto_half_width: t_max must be positive, got " +
                            std::to_string(t_max));
  return 8.0 * std::pow(t_max, 0.5 / alpha);
}

ErrorCurve linear_error_curve(const ReflectionConfig& config,
                              const GridFunction& u0, double alpha, double p,
                              const std::vector<double>& t_values,
                              int threads) {
  const char* who = "linear_error_curve";
  check_alpha(alpha, who);
  check_exponent(p, who);
  check_times(t_values, who);
  const double mass = mass_of(u0, who);
  if (std::fabs(mass) < 1e-10)
    throw std::domain_error(
        "linear_error_curve: data mass " + std::to_string(mass) +
        " vanishes; the limit statement needs nonzero mass");
  const double g = decay_exponent(config, alpha, p);
  const GridFunction u0p = pruned(u0);

  ErrorCurve curve;
  curve.alpha = alpha;
  curve.p = p;
  curve.mass = mass;
  curve.t_values = t_values;
  for (double t : t_values) {
    const KernelSpec spec(t, alpha, HeatRoute::subordination);
    const double raw = flow_gap_norm(config, spec, u0p, mass, p, threads);
    curve.raw.push_back(raw);
    curve.scaled.push_back(raw * std::pow(t, g));
  }
  return curve;
}

LineFit fit_log_log(const std::vector<double>& t, const std::vector<double>& v,
                    double drop_first_fraction) {
  if (t.size() != v.size())
    throw std::invalid_argument("fit_log_log: got " + std::to_string(t.size()) +
                                " abscissae and " + std::to_string(v.size()) +
                                " values");
  if (!(drop_first_fraction >= 0.0) || drop_first_fraction >= 1.0)
    throw std::domain_error("fit_log_log: drop fraction must lie in [0, 1)");
  const size_t start = static_cast<size_t>(
      std::floor(drop_first_fraction * static_cast<double>(t.size()) + 1e-12));
  if (t.size() - start < 2)
    throw std::domain_error(
        "fit_log_log: needs at least 2 points after the transient cut");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(t.size() - start);
  for (size_t i = start; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(v[i] > 0.0))
      throw std::domain_error("fit_log_log: log fit needs positive samples");
    const double x = std::log(t[i]), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

DecadeSummary decade_summary(const ErrorCurve& curve) {
  if (curve.t_values.empty())
    throw std::domain_error("decade_summary: empty curve");
  const double lo = curve.t_values.front();
  const double hi = curve.t_values.back();
  double first = 0.0, last = 0.0;
  int n_first = 0, n_last = 0;
  for (size_t i = 0; i < curve.t_values.size(); ++i) {
    const double t = curve.t_values[i];
    if (t <= 10.0 * lo) {
      first += curve.scaled[i];
      ++n_first;
    }
    if (t >= 0.1 * hi) {
      last += curve.scaled[i];
      ++n_last;
    }
  }
  DecadeSummary s;
  s.first_mean = first / n_first;
  s.last_mean = last / n_last;
  s.final_value = curve.scaled.back();
  return s;
}

MomentRateReport moment_rate_check(const ReflectionConfig& config,
                                   const GridFunction& f,
                                   const std::vector<double>& t_values,
                                   int threads) {
  const char* who = "moment_rate_check";
  check_times(t_values, who);
  if (t_values.size() < 4)
    throw std::domain_error("moment_rate_check: needs at least 4 t samples, "
                            "got " +
                            std::to_string(t_values.size()));
  MomentRateReport rep;
  rep.mass = mass_of(f, who);
  rep.n1 = first_moment(f);
  if (!(rep.n1 > 0.0))
    throw std::domain_error(
        "moment_rate_check: data has zero first moment; the rate bound is "
        "vacuous");
  rep.t_values = t_values;
  const double D = config.homogeneous_degree();
  const GridFunction fp = pruned(f);

  std::vector<double> sup_scaled;
  for (double t : t_values) {
    const KernelSpec spec(t, 1.0, HeatRoute::closed_form);
    GridFunction flow = kernel_convolve(config, spec, fp, f.axis, threads);
    GridFunction h = frac_heat_kernel(config, spec, f.axis, threads);
    for (size_t i = 0; i < flow.size(); ++i)
      flow.values[i] -= rep.mass * h.values[i];
    const double l1 = lp_norm(flow, 1.0);
    const double sup = lp_norm(flow, std::numeric_limits<double>::infinity());
    rep.l1_error.push_back(l1);
    rep.sup_error.push_back(sup);
    rep.ratio.push_back(l1 * std::sqrt(t) / rep.n1);
    sup_scaled.push_back(sup * std::pow(t, 0.5 * D));
  }
  rep.slope_l1 = fit_log_log(t_values, rep.l1_error).slope;
  rep.slope_sup_scaled = fit_log_log(t_values, sup_scaled).slope;
  for (size_t i = 0; i < rep.ratio.size() / 2; ++i)
    rep.c_fit = std::max(rep.c_fit, rep.ratio[i]);
  rep.uniform = true;
  for (double r : rep.ratio)
    if (r > 1.05 * rep.c_fit) rep.uniform = false;
  return rep;
}

SubordinationSplit subordination_split_check(const ReflectionConfig& config,
                                             const GridFunction& u0,
                                             double alpha, double p, double t,
                                             int threads) {
  const char* who = "subordination_split_check";
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error(std::string(who) +
                            ": alpha must lie in (0, 1), got " +
                            std::to_string(alpha));
  check_exponent(p, who);
  if (!(t > 1.0))
    throw std::domain_error(std::string(who) +
                            ": the tail estimate needs t > 1, got " +
                            std::to_string(t));
  const double mass = mass_of(u0, who);
  const double g = decay_exponent(config, alpha, p);
  const GridFunction u0p = pruned(u0);
  const double norm_u0 = lp_norm(u0, p);
  const double L = u0.axis->L;

  // one rule for the eta average; coverage far past the box as in the
  // kernel evaluation
  const double hi =
      std::max(1e6, 40.0 * (L * L + 1.0) / std::pow(t, 1.0 / alpha));
  const SubordinationRule rule =
      make_subordination_rule(SubordinatorSpec(alpha, t), 1e-8, hi, 32);

  // a priori bound per node lets the negligible ends skip the expensive
  // gaussian gap evaluation
  std::vector<double> bound(rule.nodes.size());
  double total_bound = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    bound[j] = rule.weights[j] *
               (norm_u0 + std::fabs(mass) *
                              kernel_lp_norm(config, rule.nodes[j], 1.0, p));
    total_bound += bound[j];
  }

  double i_sum = 0.0, j_sum = 0.0, eps = 0.0, tail = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double s = rule.nodes[j];
    if (s > t) tail += rule.weights[j] * std::pow(s, -g);
    if (bound[j] < 1e-13 * total_bound) continue;
    const KernelSpec gauss(s, 1.0, HeatRoute::closed_form);
    const double e = flow_gap_norm(config, gauss, u0p, mass, p, threads);
    if (s <= t) {
      i_sum += rule.weights[j] * e;
    } else {
      j_sum += rule.weights[j] * e;
      eps = std::max(eps, std::pow(s, g) * e);
    }
  }

  SubordinationSplit rep;
  rep.t = t;
  rep.alpha = alpha;
  rep.p = p;
  const double tg = std::pow(t, g);
  rep.i_part = tg * i_sum;
  rep.j_part = tg * j_sum;
  rep.epsilon_tail = eps;
  rep.tail_factor = tg * tail;
  const KernelSpec spec(t, alpha, HeatRoute::subordination);
  rep.scaled_error = tg * flow_gap_norm(config, spec, u0p, mass, p, threads);
  rep.minkowski_ok = rep.scaled_error <= rep.i_part + rep.j_part + 1e-4;
  rep.tail_ok =
      rep.j_part <= rep.epsilon_tail * rep.tail_factor * (1.0 + 1e-9) + 1e-300;
  return rep;
}

}  // namespace dunkl
