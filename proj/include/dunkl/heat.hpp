#pragma once

#include <memory>
#include <vector>

#include "dunkl/grid.hpp"
#include "dunkl/reflection.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

// How to evaluate the fractional kernel.  closed_form exists only at
// alpha = 1 (the gaussian); spectral inverts the multiplier exp(-t|xi|^2a);
// subordination integrates gaussian kernels against the one-sided stable
// density.  The spectral route is the route of record; subordination is the
// independent cross-check.
enum class HeatRoute { closed_form, spectral, subordination };

struct KernelSpec {
  double t;
  double alpha;
  HeatRoute route;
  KernelSpec(double t_, double alpha_, HeatRoute route_ = HeatRoute::spectral);
};

// Closed-form gaussian kernel (2t)^(-D/2) exp(-|x|^2/4t), D the homogeneous
// degree; unit mass under the reference measure.
double heat_kernel(const ReflectionConfig& config, double t,
                   const std::vector<double>& x);

// Radial profile of the fractional kernel at radius r (any dimension).
double frac_heat_kernel_at(const ReflectionConfig& config,
                           const KernelSpec& spec, double r,
                           int points_per_decade = 32);

// One-axis grid realization; config must be rank one and match the grid's
// multiplicity.
GridFunction frac_heat_kernel(const ReflectionConfig& config,
                              const KernelSpec& spec,
                              std::shared_ptr<const Axis> grid,
                              int threads = 0);

// Mass and L^p norms of the radial kernel by radial quadrature with a
// self-extending tail (the fractional kernel has a power tail).  alpha = 1
// uses the closed form, alpha < 1 the subordination representation.
double heat_kernel_mass(const ReflectionConfig& config, double t,
                        double alpha);
double kernel_lp_norm(const ReflectionConfig& config, double t, double alpha,
                      double p);

// Far field: h_{t,alpha}(x) ~ t * C * |x|^(-D-2alpha) as |x| grows, for
// alpha < 1.  Returns C.
double heavy_tail_constant(const ReflectionConfig& config, double alpha);

// Spectral radius where the multiplier exp(-t xi^2a) reaches `tail`.
double semigroup_xi_max(double t, double alpha, double tail = 1e-18);

// Rank-one two-point gaussian kernel tau_x h_t(-y): the closed product form
//   (2t)^(-D/2) exp(-(x^2+y^2)/4t) E_k(x, y/2t),  D = 1 + 2k.
double heat_pair_kernel(double k, double t, double x, double y);

// Radial samples with local-cubic evaluation; abscissae graded from `scale`
// spacing near 0 to relative spacing far out.  Exact at the nodes.
class RadialKernelTable {
 public:
  RadialKernelTable(std::vector<double> r, std::vector<double> v);
  double operator()(double r) const;  // evaluates at |r|; throws past r_max
  double r_max() const { return r_.back(); }

 private:
  std::vector<double> r_, v_;
};

// Tabulates the radial fractional kernel out to r_max (subordination
// values; closed form at alpha = 1).
RadialKernelTable frac_heat_table(const ReflectionConfig& config,
                                  const KernelSpec& spec, double r_max);

// The flow h_{t,alpha} * u0 on out_axis by direct quadrature of
//   int u0(y) tau_x h(-y) dmu(y)
// against u0's own samples: no transforms, so the box may be arbitrarily
// wide and graded.  Intended for compactly supported u0 (zero samples are
// skipped); u0 must be real-valued.
GridFunction kernel_convolve(const ReflectionConfig& config,
                             const KernelSpec& spec, const GridFunction& u0,
                             std::shared_ptr<const Axis> out_axis,
                             int threads = 0);

// exp(-t (-Laplacian)^alpha) f, returned on f's own axis.
GridFunction semigroup_apply(const GridFunction& f,
                             std::shared_ptr<const Axis> spectral, double t,
                             double alpha, int threads = 0,
                             double boundary_tol = 1e-10);

// Cached-plan variant for repeated applications on fixed axes.
class SemigroupPlan {
 public:
  SemigroupPlan(double k, std::shared_ptr<const Axis> physical,
                std::shared_ptr<const Axis> spectral, int threads = 0);

  GridFunction apply(const GridFunction& f, double t, double alpha,
                     double boundary_tol = 1e-10) const;
  const TransformPlan& transform_plan() const { return plan_; }

 private:
  TransformPlan plan_;
};

}  // namespace dunkl
