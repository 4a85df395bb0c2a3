#include "dunkl/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "dunkl/special_functions.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

namespace {

void check_problem_grid(const NonlinearProblem& pb, const char* who) {
  if (pb.config.dim != 1)
    throw std::invalid_argument(std::string(who) +
                                ": the grid evolution is rank one, got dim " +
                                std::to_string(pb.config.dim));
  if (!pb.u0.axis || pb.u0.size() != pb.u0.axis->size())
    throw std::invalid_argument(std::string(who) + ": malformed data");
  if (pb.u0.axis->k != pb.config.multiplicities[0])
    throw std::invalid_argument(std::string(who) +
                                ": axis multiplicity differs from the config");
}

double box_mass(const GridFunction& u) { return integral(u).real(); }

// int u^p dmu over the box; only the positive part dissipates (negative
// samples are spectral dust and carry no absorption)
double dissipation_of(const GridFunction& u, double p) {
  const Axis& ax = *u.axis;
  double s = 0.0;
  for (size_t i = 0; i < ax.size(); ++i) {
    const double v = u.values[i].real();
    if (v > 0.0) s += ax.weights[i] * std::pow(v, p);
  }
  return s;
}

// Smallest spectral half-width carrying the data: scan the forward
// transform magnitude on a ladder and take the point where its upper
// envelope falls below 1e-4 of the peak.  The ladder stops at the
// bandwidth the grid itself resolves (phase ~12 per panel); data that is
// still rough there cannot be evolved on this grid.
double pick_xi_max(const GridFunction& u0, double k) {
  const Axis& ax = *u0.axis;
  double gap = 0.0;
  for (size_t i = 1; i < ax.size(); ++i)
    gap = std::max(gap, ax.nodes[i] - ax.nodes[i - 1]);
  // widest panel ~ max node gap / 0.095 (central gap of the 16-node rule)
  const double cap = 12.0 * 0.095 / gap;
  const int jmax = std::max(4, static_cast<int>(std::floor(cap / 2.0)));
  std::vector<double> mag(jmax);
  for (int j = 1; j <= jmax; ++j) {
    const double xi = 2.0 * j;
    double se = 0.0, so = 0.0;
    for (size_t i = 0; i < ax.size(); ++i) {
      const double z = xi * ax.nodes[i];
      const double v = u0.values[i].real();
      se += ax.weights[i] * v * normalized_bessel_j(k - 0.5, z);
      so += ax.weights[i] * v * z / (2.0 * k + 1.0) *
            normalized_bessel_j(k + 0.5, z);
    }
    mag[j - 1] = std::hypot(se, so);
  }
  double fmax = std::abs(box_mass(u0));
  for (double v : mag) fmax = std::max(fmax, v);
  if (fmax == 0.0) return 8.0;
  double env = 0.0, pick = -1.0;
  for (int j = jmax - 1; j >= 0; --j) {
    env = std::max(env, mag[j]);
    if (env <= 1e-4 * fmax) pick = 2.0 * (j + 1);
  }
  if (pick < 0.0) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "evolve: physical axis too coarse for the data: spectrum "
                  "still at %.2e of peak at the grid bandwidth %.1f",
                  env / fmax, 2.0 * jmax);
    throw std::invalid_argument(msg);
  }
  return std::max(8.0, pick);
}

// exact flow of u' = -u^p over tau; u <= 0 passes through (and any
// imaginary dust from the spectral substep is dropped)
void absorption_half_step(GridFunction& u, double p, double tau) {
  const bool quadratic = (p == 2.0);
  for (auto& z : u.values) {
    const double x = z.real();
    if (x > 0.0) {
      const double y =
          quadratic ? x / (1.0 + tau * x)
                    : std::pow(std::pow(x, 1.0 - p) + (p - 1.0) * tau,
                               -1.0 / (p - 1.0));
      z = y;
    } else {
      z = x;
    }
  }
}

std::vector<long> snapshot_indices(const std::vector<double>& requested,
                                   double dt, long n_steps, double t_end) {
  std::vector<double> times = requested;
  if (times.empty()) {
    // log-spaced default spanning what the run can resolve
    const double t0 = std::max(10.0 * dt, t_end / 100.0);
    const int count = 24;
    for (int i = 0; i < count; ++i)
      times.push_back(t0 * std::pow(t_end / t0, i / double(count - 1)));
  }
  std::vector<long> idx;
  for (double ts : times) {
    if (!(ts > 0.0) || ts > t_end * (1.0 + 1e-9))
      throw std::invalid_argument(
          "evolve: snapshot time " + std::to_string(ts) +
          " outside (0, t_end = " + std::to_string(t_end) + "]");
    idx.push_back(std::clamp<long>(std::lround(ts / dt), 1, n_steps));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

void check_trace(const EvolutionTrace& tr, const char* who) {
  const size_t n = tr.times.size();
  if (n < 2 || tr.mass.size() != n || tr.loss.size() != n ||
      tr.outflow.size() != n || tr.dissipation.size() != n)
    throw std::invalid_argument(std::string(who) +
                                ": trace is empty or inconsistent");
}

}  // namespace

NonlinearProblem::NonlinearProblem(const ReflectionConfig& config_,
                                   double alpha_, double p_, GridFunction u0_,
                                   double t_end_, double dt_,
                                   std::vector<double> q_exponents_)
    : config(config_),
      alpha(alpha_),
      p(p_),
      u0(std::move(u0_)),
      t_end(t_end_),
      dt(dt_),
      q_exponents(std::move(q_exponents_)) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("NonlinearProblem: alpha must lie in (0, 1], got " +
                            std::to_string(alpha));
  const double threshold = 1.0 + 2.0 * alpha / config.homogeneous_degree();
  if (!(p > threshold)) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "NonlinearProblem: p = %g must exceed 1 + 2 alpha / D = %g; "
                  "mass retention fails at or below it",
                  p, threshold);
    throw std::domain_error(msg);
  }
  if (!(t_end > 0.0))
    throw std::domain_error("NonlinearProblem: t_end must be positive, got " +
                            std::to_string(t_end));
  if (!(dt > 0.0) || dt > t_end)
    throw std::domain_error("NonlinearProblem: dt must lie in (0, t_end], got " +
                            std::to_string(dt));
  for (double q : q_exponents)
    if (!(q >= 1.0) || !std::isfinite(q))
      throw std::domain_error(
          "NonlinearProblem: q-exponents must be finite and >= 1, got " +
          std::to_string(q));
  if (!u0.axis || u0.size() != u0.axis->size())
    throw std::domain_error("NonlinearProblem: malformed initial data");
  for (size_t i = 0; i < u0.size(); ++i) {
    if (u0.values[i].imag() != 0.0)
      throw std::domain_error("NonlinearProblem: initial data must be real");
    if (u0.values[i].real() < 0.0) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "NonlinearProblem: initial data must be nonnegative; "
                    "sample at x = %g is %g",
                    u0.axis->nodes[i], u0.values[i].real());
      throw std::domain_error(msg);
    }
  }
}

double mass_identity_residual(const EvolutionTrace& trace) {
  check_trace(trace, "mass_identity_residual");
  const double m0 = trace.mass[0];
  double r = 0.0;
  for (size_t i = 0; i < trace.times.size(); ++i)
    r = std::max(r, std::abs(m0 - trace.mass[i] - trace.loss[i] -
                             trace.outflow[i]));
  return r;
}

EvolutionTrace evolve(const NonlinearProblem& problem,
                      std::vector<double> snapshot_times, int threads,
                      double boundary_tol) {
  check_problem_grid(problem, "evolve");
  const double k = problem.config.multiplicities[0];
  const double dt = problem.dt;
  const long n_steps = std::lround(problem.t_end / dt);
  if (std::abs(n_steps * dt - problem.t_end) >
      1e-9 * std::max(1.0, problem.t_end))
    throw std::invalid_argument("evolve: dt = " + std::to_string(dt) +
                                " does not divide t_end = " +
                                std::to_string(problem.t_end));
  const std::vector<long> snap_idx =
      snapshot_indices(snapshot_times, dt, n_steps, problem.t_end);

  const double xi_max = pick_xi_max(problem.u0, k);
  auto spectral = std::make_shared<Axis>(
      make_axis_spectral(k, xi_max, 10.0 / problem.u0.axis->L, 8));
  auto plan = std::make_shared<SemigroupPlan>(k, problem.u0.axis, spectral,
                                              threads);

  EvolutionTrace tr;
  tr.plan = plan;
  tr.times.reserve(n_steps + 1);
  GridFunction u = problem.u0;
  tr.times.push_back(0.0);
  tr.mass.push_back(box_mass(u));
  tr.loss.push_back(0.0);
  tr.outflow.push_back(0.0);
  tr.dissipation.push_back(dissipation_of(u, problem.p));

  size_t next_snap = 0;
  for (long i = 1; i <= n_steps; ++i) {
    absorption_half_step(u, problem.p, 0.5 * dt);
    const double ratio = boundary_ratio(u);
    if (ratio > boundary_tol) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "nonlinear evolution reached the box edge at t = %g "
                    "(boundary ratio %.3e > %.3e); widen the box",
                    i * dt, ratio, boundary_tol);
      throw TruncationError(msg, ratio);
    }
    const double m_in = box_mass(u);
    // the evolve gate above supersedes the plan's own boundary check
    u = plan->apply(u, dt, problem.alpha, 1.1);
    const double m_out = box_mass(u);
    absorption_half_step(u, problem.p, 0.5 * dt);

    tr.times.push_back(i * dt);
    tr.mass.push_back(box_mass(u));
    tr.outflow.push_back(tr.outflow.back() + (m_in - m_out));
    tr.dissipation.push_back(dissipation_of(u, problem.p));
    tr.loss.push_back(tr.loss.back() +
                      0.5 * dt * (tr.dissipation[i - 1] + tr.dissipation[i]));
    if (next_snap < snap_idx.size() && i == snap_idx[next_snap]) {
      tr.snapshot_times.push_back(i * dt);
      tr.snapshots.push_back(u);
      ++next_snap;
    }
  }
  return tr;
}

ComparisonReport comparison_check(const EvolutionTrace& trace,
                                  const NonlinearProblem& problem,
                                  double slack, int threads) {
  check_trace(trace, "comparison_check");
  check_problem_grid(problem, "comparison_check");
  if (trace.snapshots.empty())
    throw std::invalid_argument("comparison_check: trace carries no snapshots");
  std::shared_ptr<const SemigroupPlan> plan = trace.plan;
  if (!plan) {
    const double k = problem.config.multiplicities[0];
    auto spectral = std::make_shared<Axis>(make_axis_spectral(
        k, pick_xi_max(problem.u0, k), 10.0 / problem.u0.axis->L, 8));
    plan = std::make_shared<SemigroupPlan>(k, problem.u0.axis, spectral,
                                           threads);
  }
  ComparisonReport rep;
  rep.slack = slack;
  rep.worst_gap = -std::numeric_limits<double>::infinity();
  rep.worst_time = trace.snapshot_times.front();
  for (size_t s = 0; s < trace.snapshots.size(); ++s) {
    const GridFunction lin =
        plan->apply(problem.u0, trace.snapshot_times[s], problem.alpha, 1.1);
    const GridFunction& u = trace.snapshots[s];
    for (size_t i = 0; i < u.size(); ++i) {
      const double gap = u.values[i].real() - lin.values[i].real();
      if (gap > rep.worst_gap) {
        rep.worst_gap = gap;
        rep.worst_time = trace.snapshot_times[s];
      }
    }
  }
  rep.ok = rep.worst_gap <= slack;
  return rep;
}

MassEstimate asymptotic_mass(const EvolutionTrace& trace) {
  check_trace(trace, "asymptotic_mass");
  MassEstimate est;
  est.value = trace.mass.back() + trace.outflow.back();
  est.error_bar = 0.0;
  est.tail_fraction = 0.0;
  est.fitted_decay = 0.0;
  est.kind = MassEstimateKind::conclusive;

  const double t_end = trace.times.back();
  bool any_dissipation = false;
  for (double g : trace.dissipation)
    if (g > 0.0) any_dissipation = true;
  if (!any_dissipation) return est;  // nothing ever burned; value is exact

  // dissipation spent over the last half, against the estimate itself
  const size_t half =
      std::lower_bound(trace.times.begin(), trace.times.end(), 0.5 * t_end) -
      trace.times.begin();
  const double tail_spend = trace.loss.back() - trace.loss[half];
  est.tail_fraction =
      est.value > 0.0 ? tail_spend / est.value
                      : std::numeric_limits<double>::infinity();

  // fit int u^p ~ C t^-beta over the last decade and extrapolate beyond
  std::vector<double> ft, fg;
  for (size_t i = 0; i < trace.times.size(); ++i)
    if (trace.times[i] >= 0.1 * t_end && trace.dissipation[i] > 0.0) {
      ft.push_back(trace.times[i]);
      fg.push_back(trace.dissipation[i]);
    }
  if (ft.size() < 4) {
    est.kind = MassEstimateKind::inconclusive;
    return est;
  }
  const LineFit fit = fit_log_log(ft, fg, 0.0);
  est.fitted_decay = -fit.slope;
  if (est.fitted_decay > 1.05) {
    const double g_end =
        std::exp(fit.intercept + fit.slope * std::log(t_end));
    est.error_bar = g_end * t_end / (est.fitted_decay - 1.0);
  } else {
    est.kind = MassEstimateKind::inconclusive;
  }
  if (est.tail_fraction >= 1e-3) est.kind = MassEstimateKind::inconclusive;
  return est;
}

ErrorCurve nonlinear_error_curve(const EvolutionTrace& trace,
                                 const NonlinearProblem& problem, double q,
                                 int threads) {
  check_trace(trace, "nonlinear_error_curve");
  check_problem_grid(problem, "nonlinear_error_curve");
  if (!(q >= 1.0) || !std::isfinite(q))
    throw std::domain_error(
        "nonlinear_error_curve: q must be finite and >= 1, got " +
        std::to_string(q));
  if (trace.snapshots.empty())
    throw std::invalid_argument(
        "nonlinear_error_curve: trace carries no snapshots");
  const MassEstimate est = asymptotic_mass(trace);
  if (est.kind != MassEstimateKind::conclusive)
    throw std::domain_error(
        "nonlinear_error_curve: the limit-mass estimate is inconclusive "
        "(tail fraction " +
        std::to_string(est.tail_fraction) + ", fitted decay " +
        std::to_string(est.fitted_decay) + "); run longer");

  ErrorCurve curve;
  curve.alpha = problem.alpha;
  curve.p = q;
  curve.mass = est.value;
  const double g = decay_exponent(problem.config, problem.alpha, q);
  const HeatRoute route = problem.alpha == 1.0 ? HeatRoute::closed_form
                                               : HeatRoute::subordination;
  for (size_t s = 0; s < trace.snapshots.size(); ++s) {
    const double t = trace.snapshot_times[s];
    const GridFunction kern = frac_heat_kernel(
        problem.config, KernelSpec(t, problem.alpha, route),
        problem.u0.axis, threads);
    GridFunction gap;
    gap.axis = problem.u0.axis;
    gap.values.resize(kern.size());
    for (size_t i = 0; i < kern.size(); ++i)
      gap.values[i] = trace.snapshots[s].values[i].real() -
                      est.value * kern.values[i].real();
    curve.t_values.push_back(t);
    curve.raw.push_back(lp_norm(gap, q));
    curve.scaled.push_back(curve.raw.back() * std::pow(t, g));
  }
  return curve;
}

}  // namespace dunkl
