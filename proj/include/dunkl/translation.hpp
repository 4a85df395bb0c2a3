#pragma once

#include <functional>
#include <memory>

#include "dunkl/grid.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

// (tau_x f)(y) by the explicit rank-one integral: average over u in (-1, 1)
// against b_k (1+u)(1-u^2)^(k-1) du of
//   f_even(z) + (x+y)/z f_odd(z),   z = sqrt(x^2 + y^2 + 2xy u).
// Symmetric in (x, y).  The density needs k > 0; k = 0 degenerates to the
// classical shift f(x + y).
double dunkl_translate_pointwise(double k,
                                 const std::function<double(double)>& f,
                                 double x, double y, int n = 96);

// Spectral route: multiply the transform by the bounded kernel at ix and
// invert back onto f's own axis.  Mass is preserved since the multiplier
// is 1 at the origin.
GridFunction dunkl_translate(const GridFunction& f, double x,
                             std::shared_ptr<const Axis> spectral,
                             int threads = 0, double boundary_tol = 1e-10);

// f * g via the product of transforms, sampled back on the shared physical
// axis.  Norm statements about the result assume at least one factor is
// even (radial); that is the caller's contract, not checked here.
GridFunction dunkl_convolve(const GridFunction& f, const GridFunction& g,
                            std::shared_ptr<const Axis> spectral,
                            int threads = 0, double boundary_tol = 1e-10);

struct YoungReport {
  double p, q, r;
  double norm_f, norm_g, norm_conv;
  double bound;  // norm_f * norm_g
  double ratio;  // norm_conv / bound
  bool holds;    // ratio <= 1 + 1e-6
};

// Checks the convolution norm inequality |f*g|_r <= |f|_p |g|_q.
// Requires the exponent identity 1/p + 1/q = 1 + 1/r (infinity allowed).
YoungReport young_check(const GridFunction& f, const GridFunction& g,
                        std::shared_ptr<const Axis> spectral, double p,
                        double q, double r, int threads = 0);

}  // namespace dunkl
