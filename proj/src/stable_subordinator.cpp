#include "dunkl/stable_subordinator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dunkl/quadrature.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(double alpha, double t, SubordinatorStrategy strategy) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw std::domain_error("SubordinatorSpec: alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
  }
  if (!(t > 0.0)) {
    throw std::domain_error("SubordinatorSpec: t must be positive, got " +
                            std::to_string(t));
  }
  if (strategy == SubordinatorStrategy::closed_form_half && alpha != 0.5) {
    throw std::domain_error(
        "SubordinatorSpec: closed_form_half is only valid at alpha = 1/2");
  }
}

SubordinatorStrategy pick_strategy(double alpha) {
  return alpha == 0.5 ? SubordinatorStrategy::closed_form_half
                      : SubordinatorStrategy::zolotarev_integral;
}

// log A(u) for the Zolotarev integral representation,
//   A(u) = [ sin(alpha u)^alpha sin((1-alpha) u)^(1-alpha) / sin u ]^(1/(1-alpha)),
// monotone increasing on (0, pi) with a finite limit at u = 0.
double zolotarev_log_A(double alpha, double u) {
  const double b = 1.0 - alpha;
  if (u < 1e-9) {
    return (alpha * std::log(alpha) + b * std::log(b)) / b;
  }
  return (alpha * std::log(std::sin(alpha * u)) +
          b * std::log(std::sin(b * u)) - std::log(std::sin(u))) /
         b;
}

// Solve log A(u) = target by bisection; log A is increasing in u.
double solve_log_A(double alpha, double target, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (zolotarev_log_A(alpha, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14 * kPi) break;
  }
  return 0.5 * (lo + hi);
}

// eta_{1,alpha}(s) via the Zolotarev integral
//   eta(s) = alpha/((1-alpha) pi) * s^(-1/(1-alpha))
//            * int_0^pi A(u) exp(-A(u) s^(-alpha/(1-alpha))) du.
// The integrand is unimodal: it peaks where A(u) = 1/c, c = s^(-alpha/(1-alpha)).
double eta_unit_zolotarev(double alpha, double s) {
  const double b = 1.0 - alpha;
  const double log_c = -(alpha / b) * std::log(s);
  const double u_top = kPi * (1.0 - 1e-13);
  const double log_A0 = zolotarev_log_A(alpha, 0.0);

  // Upper cut: beyond A(u) c = 700 the integrand has underflowed.
  const double log_A_cut = std::log(700.0) - log_c;
  if (zolotarev_log_A(alpha, u_top) < log_A_cut) {
    throw std::runtime_error("stable_density: Zolotarev integrand not resolved");
  }
  if (log_A0 > log_A_cut) return 0.0;  // entire integrand underflows
  const double u_hi = solve_log_A(alpha, log_A_cut, 0.0, u_top);

  // Peak location: A(u*) = 1/c when that lies above A(0), else the peak is at 0.
  double u_star = 0.0;
  double log_peak;
  if (-log_c > log_A0) {
    u_star = solve_log_A(alpha, -log_c, 0.0, u_top);
    log_peak = -log_c - 1.0;
  } else {
    log_peak = log_A0 - std::exp(log_A0 + log_c);
  }
  const double peak = std::exp(log_peak);

  if (log_peak < -400.0) return 0.0;  // vanishes at every useful scale

  auto integrand = [&](double u) {
    double la = zolotarev_log_A(alpha, u);
    double ac = std::exp(la + log_c);
    return ac > 700.0 ? 0.0 : std::exp(la - ac);
  };

  // The integrand carries relative rounding noise of order (1 + A c) eps
  // from the log-space evaluation, up to ~1e-12 at the exp cutoff; asking
  // for more than ~1e-11 would recurse without converging.
  const double tol = 1e-11 * peak * u_hi;
  double integral = 0.0;
  if (u_star > 1e-12 && u_star < u_hi) {
    integral += adaptive_quad(integrand, 0.0, u_star, tol);
    integral += adaptive_quad(integrand, u_star, u_hi, tol);
  } else {
    integral += adaptive_quad(integrand, 0.0, u_hi, tol);
  }
  return alpha / (b * kPi) * std::pow(s, -1.0 / b) * integral;
}

// Convergent large-s series
//   eta_{1,alpha}(s) = (1/pi) sum_{n>=1} (-1)^(n+1) Gamma(n alpha + 1)/n!
//                      * sin(n pi alpha) * s^(-n alpha - 1).
// Used for s >= 3 where it converges rapidly; individual terms can vanish
// (sin hits zeros for rational alpha), so stopping needs two small terms.
double eta_unit_series(double alpha, double s) {
  const double log_s = std::log(s);
  double sum = 0.0;
  double prev_mag = 0.0;
  for (int n = 1; n <= 400; ++n) {
    double log_mag = log_gamma(n * alpha + 1.0) - log_gamma(n + 1.0) -
                     (n * alpha + 1.0) * log_s;
    double term = std::exp(log_mag) * std::sin(n * kPi * alpha);
    if (n % 2 == 0) term = -term;
    sum += term;
    double mag = std::fabs(term);
    if (n > 3 && mag < 1e-17 * std::fabs(sum) &&
        prev_mag < 1e-17 * std::fabs(sum)) {
      return sum / kPi;
    }
    prev_mag = mag;
  }
  throw std::runtime_error("stable_density: series did not converge at s = " +
                           std::to_string(s));
}

}  // namespace

SubordinatorSpec::SubordinatorSpec(double alpha_, double t_)
    : alpha(alpha_), t(t_), strategy(pick_strategy(alpha_)) {
  validate(alpha, t, strategy);
}

SubordinatorSpec::SubordinatorSpec(double alpha_, double t_,
                                   SubordinatorStrategy strategy_)
    : alpha(alpha_), t(t_), strategy(strategy_) {
  validate(alpha, t, strategy);
}

double stable_density_unit(double alpha, double s,
                           SubordinatorStrategy strategy) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error(
        "stable_density_unit: alpha must lie in (0, 1), got " +
        std::to_string(alpha));
  }
  if (!(s > 0.0)) return 0.0;
  if (strategy == SubordinatorStrategy::closed_form_half) {
    if (alpha != 0.5) {
      throw std::domain_error(
          "stable_density_unit: closed_form_half requires alpha = 1/2");
    }
    // 1/(2 sqrt(pi)) s^(-3/2) exp(-1/(4s))
    return 0.28209479177387814 * std::pow(s, -1.5) * std::exp(-0.25 / s);
  }
  if (s >= 3.0) return eta_unit_series(alpha, s);
  return eta_unit_zolotarev(alpha, s);
}

double stable_density(const SubordinatorSpec& spec, double s) {
  if (spec.kind() == SubordinatorKind::point_mass) {
    throw std::logic_error(
        "stable_density: alpha = 1 is a point mass, not a density");
  }
  const double scale = std::pow(spec.t, -1.0 / spec.alpha);
  return scale * stable_density_unit(spec.alpha, s * scale, spec.strategy);
}

double SubordinationRule::total() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  return sum;
}

SubordinationRule make_subordination_rule(const SubordinatorSpec& spec,
                                          double scaled_lo, double scaled_hi,
                                          int points_per_decade) {
  if (spec.kind() == SubordinatorKind::point_mass) {
    throw std::logic_error(
        "make_subordination_rule: alpha = 1 is a point mass, not a density");
  }
  if (!(scaled_lo > 0.0) || !(scaled_hi > scaled_lo)) {
    throw std::domain_error("make_subordination_rule: bad s range");
  }
  if (points_per_decade < 2) {
    throw std::domain_error("make_subordination_rule: need >= 2 points per decade");
  }
  const double t_scale = std::pow(spec.t, 1.0 / spec.alpha);
  const double v_lo = std::log(scaled_lo * t_scale);
  const double v_hi = std::log(scaled_hi * t_scale);
  const double decade = std::log(10.0);
  const int panels = std::max(1, static_cast<int>(std::ceil((v_hi - v_lo) / decade)));
  // The density peak sharpens like (1 - alpha); keep nodes per peak width flat.
  const int ppd_eff = static_cast<int>(std::ceil(
      points_per_decade * std::max(1.0, 0.5 / (1.0 - spec.alpha))));
  const GaussRule& gl = gauss_rule(0.0, 0.0, ppd_eff);

  SubordinationRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * gl.nodes.size());
  rule.weights.reserve(rule.nodes.capacity());
  const double width = (v_hi - v_lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = v_lo + p * width;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double v = a + 0.5 * width * (gl.nodes[i] + 1.0);
      double s = std::exp(v);
      double eta = stable_density(spec, s);
      rule.nodes.push_back(s);
      rule.weights.push_back(0.5 * width * gl.weights[i] * s * eta);
    }
  }
  return rule;
}

}  // namespace dunkl
