#pragma once

#include <vector>

#include "dunkl/grid.hpp"
#include "dunkl/heat.hpp"
#include "dunkl/reflection.hpp"

namespace dunkl {

// integral of |f(x)| |x| against the axis measure
double first_moment(const GridFunction& f);

// d_k / (2 alpha p'): decay exponent of the p-norm gap to the kernel
double decay_exponent(const ReflectionConfig& config, double alpha, double p);

// half-width wide enough to hold kernels spreading up to t_max
double auto_half_width(double alpha, double t_max);

struct ErrorCurve {
  double alpha = 0.0;
  double p = 0.0;
  double mass = 0.0;  // integral of the data
  std::vector<double> t_values;
  std::vector<double> raw;     // || flow(t) - mass * kernel(t) ||_p
  std::vector<double> scaled;  // raw * t^decay_exponent, identically
};

// Gap between the fractional flow of u0 and mass * kernel over increasing
// times.  The flow is the direct kernel convolution against u0's samples,
// so wide graded boxes are fine; u0 should be compactly supported or decay
// fast (relatively negligible samples are dropped).
ErrorCurve linear_error_curve(const ReflectionConfig& config,
                              const GridFunction& u0, double alpha, double p,
                              const std::vector<double>& t_values,
                              int threads = 0);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// least squares on (log t, log v) after dropping the leading transient
LineFit fit_log_log(const std::vector<double>& t, const std::vector<double>& v,
                    double drop_first_fraction = 0.2);

struct DecadeSummary {
  double first_mean = 0.0;  // mean of scaled error over [t_0, 10 t_0]
  double last_mean = 0.0;   // mean over [t_max/10, t_max]
  double final_value = 0.0;
};

DecadeSummary decade_summary(const ErrorCurve& curve);

struct MomentRateReport {
  double mass = 0.0;
  double n1 = 0.0;  // first moment of the data
  std::vector<double> t_values;
  std::vector<double> l1_error;
  std::vector<double> sup_error;
  std::vector<double> ratio;      // l1_error / (n1 * t^-1/2)
  double slope_l1 = 0.0;          // log l1_error vs log t
  double slope_sup_scaled = 0.0;  // log t^{d_k/2} sup_error vs log t
  double c_fit = 0.0;             // max ratio over the first half of the grid
  bool uniform = false;           // every ratio <= 1.05 * c_fit
};

// gaussian-flow gap rates against the first-moment bound n1 * t^-1/2
MomentRateReport moment_rate_check(const ReflectionConfig& config,
                                   const GridFunction& f,
                                   const std::vector<double>& t_values,
                                   int threads = 0);

struct SubordinationSplit {
  double t = 0.0;
  double alpha = 0.0;
  double p = 0.0;
  double i_part = 0.0;        // scaled gap mass from subordination s <= t
  double j_part = 0.0;        // complementary piece over s > t
  double scaled_error = 0.0;  // scaled fractional gap at t itself
  double epsilon_tail = 0.0;  // sup over s >= t of the scaled gaussian gap
  double tail_factor = 0.0;   // t^g int_{s>t} s^-g eta ds on the same rule
  bool minkowski_ok = false;  // scaled_error <= i_part + j_part + 1e-4
  bool tail_ok = false;       // j_part <= epsilon_tail * tail_factor
};

// Splits the scaled fractional gap across the subordination rule at s = t:
// the gap is at most the eta-average of the gaussian gaps, the early part
// vanishes for large t, and the tail part is controlled by the gaussian
// rate times a computable factor.
SubordinationSplit subordination_split_check(const ReflectionConfig& config,
                                             const GridFunction& u0,
                                             double alpha, double p, double t,
                                             int threads = 0);

}  // namespace dunkl
