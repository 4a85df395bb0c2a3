#pragma once

#include <memory>
#include <vector>

#include "dunkl/asymptotics.hpp"
#include "dunkl/grid.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/reflection.hpp"

namespace dunkl {

// Absorption problem  du/dt + (-Laplacian)^a u = -u^p  with nonnegative
// data on a rank-one grid.  The exponent must satisfy p > 1 + 2a/D (D the
// homogeneous degree); at or below that threshold the flow need not retain
// mass and construction refuses it.
struct NonlinearProblem {
  ReflectionConfig config;
  double alpha;
  double p;
  GridFunction u0;
  double t_end;
  double dt;
  std::vector<double> q_exponents;  // error-report norms, each in [1, inf)

  NonlinearProblem(const ReflectionConfig& config, double alpha, double p,
                   GridFunction u0, double t_end, double dt,
                   std::vector<double> q_exponents = {1.0, 2.0});
};

// Step-by-step record of one run.  mass is the box mass; loss is the
// trapezoid-in-time of int u^p dmu; outflow is the mass that left the box
// through the linear substeps (the fractional kernel has heavy tails, so
// this is physical spreading, not an artifact).  The accounting identity
//   mass(0) = mass(t) + loss(t) + outflow(t)
// holds up to the trapezoid error O(dt^2).
struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> loss;
  std::vector<double> outflow;
  std::vector<double> dissipation;  // int u^p dmu at each time
  std::vector<double> snapshot_times;
  std::vector<GridFunction> snapshots;
  std::shared_ptr<const SemigroupPlan> plan;  // reused by the checks
};

// max_t |mass(0) - mass(t) - loss(t) - outflow(t)|
double mass_identity_residual(const EvolutionTrace& trace);

// Strang splitting: exact half-step absorption flow
// u -> (u^(1-p) + (p-1) dt/2)^(-1/(p-1)) for u > 0 (u = 0 fixed), full
// linear step through a cached spectral plan, half absorption step.
// Second order in dt; nonnegativity is preserved by both substeps.
// Snapshot times round to step boundaries; an empty list requests a
// log-spaced default.  Throws TruncationError with the offending time when
// the solution stops decaying at the box edge (ratio above boundary_tol;
// the heavy-tailed flow makes edge/peak ratios of a few 1e-3 normal on a
// well-sized box, hence the loose default).
EvolutionTrace evolve(const NonlinearProblem& problem,
                      std::vector<double> snapshot_times = {},
                      int threads = 0, double boundary_tol = 1e-2);

// Samplewise domination of the absorbed flow by the plain linear flow,
// checked at every snapshot: u(., t) <= (linear flow of u0)(t) + slack.
struct ComparisonReport {
  bool ok;
  double slack;
  double worst_gap;   // max over snapshots of max(u - linear)
  double worst_time;  // snapshot time where worst_gap occurs
};
ComparisonReport comparison_check(const EvolutionTrace& trace,
                                  const NonlinearProblem& problem,
                                  double slack = 1e-6, int threads = 0);

// Limit-mass estimate: box mass at t_end plus accumulated outflow, with an
// error bar extrapolating the remaining dissipation from the fitted decay
// of int u^p over the last decade.  The estimate is conclusive only when
// the dissipation over [t_end/2, t_end] is below 1e-3 of the estimate and
// the fitted decay is integrable (exponent > 1.05).
enum class MassEstimateKind { conclusive, inconclusive };
struct MassEstimate {
  MassEstimateKind kind;
  double value;
  double error_bar;      // extrapolated dissipation beyond t_end
  double tail_fraction;  // dissipation over the last half / value
  double fitted_decay;   // beta in int u^p ~ C t^-beta
};
MassEstimate asymptotic_mass(const EvolutionTrace& trace);

// Scaled gap t^(D (1 - 1/q) / (2a)) * ||u(., t) - M_inf h_{t,a}||_q at the
// snapshot times, with M_inf from asymptotic_mass (which must be
// conclusive).  q must be finite.
ErrorCurve nonlinear_error_curve(const EvolutionTrace& trace,
                                 const NonlinearProblem& problem, double q,
                                 int threads = 0);

}  // namespace dunkl
