#pragma once

#include <vector>

namespace dunkl {

// One-sided alpha-stable subordinator density eta_{t,alpha}: the density of
// the law with Laplace transform exp(-t lambda^alpha), 0 < alpha < 1.
// alpha = 1 is the degenerate case (unit point mass at s = t): it carries no
// density, and callers must branch on kind().

enum class SubordinatorStrategy { closed_form_half, zolotarev_integral };
enum class SubordinatorKind { density, point_mass };

struct SubordinatorSpec {
  double alpha;
  double t;
  SubordinatorStrategy strategy;

  SubordinatorSpec(double alpha_, double t_);
  SubordinatorSpec(double alpha_, double t_, SubordinatorStrategy strategy_);

  SubordinatorKind kind() const {
    return alpha == 1.0 ? SubordinatorKind::point_mass
                        : SubordinatorKind::density;
  }
  // Location of the point mass in the degenerate case.
  double atom() const { return t; }
};

// eta_{1,alpha}(s) for 0 < alpha < 1, s > 0.
double stable_density_unit(double alpha, double s,
                           SubordinatorStrategy strategy);

// eta_{t,alpha}(s), computed by exact rescaling of the unit-time density.
// Throws std::logic_error when spec.kind() == point_mass.
double stable_density(const SubordinatorSpec& spec, double s);

// Log-spaced quadrature rule for integrals against eta_{t,alpha}(s) ds,
// with the density values cached on the nodes.  Integrates smooth f(s) as
// sum_i weight[i] * f(node[i]); the weights already contain eta.
struct SubordinationRule {
  std::vector<double> nodes;    // s values, increasing
  std::vector<double> weights;  // quadrature weight times eta_{t,alpha}(s)
  double total() const;         // should be ~1 when the range is wide enough
};

SubordinationRule make_subordination_rule(const SubordinatorSpec& spec,
                                          double scaled_lo = 1e-6,
                                          double scaled_hi = 1e6,
                                          int points_per_decade = 24);

}  // namespace dunkl
