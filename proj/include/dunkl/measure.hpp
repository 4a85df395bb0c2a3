#pragma once

#include <functional>
#include <vector>

#include "dunkl/reflection.hpp"

namespace dunkl {

// Weight v(x) = prod_j 2^(k_j) |x_j|^(2 k_j).
double weight_v(const ReflectionConfig& config, const std::vector<double>& x);

// Density of the reference measure: normalization() * v(x).
double measure_density(const ReflectionConfig& config,
                       const std::vector<double>& x);

// Measure of the Euclidean ball B(center, r), by iterated adaptive
// quadrature with the axis cusps split out.  Exact cost grows with dim;
// intended for dim <= 3.
double ball_volume(const ReflectionConfig& config,
                   const std::vector<double>& center, double r,
                   double rel_tol = 1e-9);

// Closed-form comparison quantity (2r)^d prod_j c_j 2^(k_j)(|c_j|+r)^(2k_j):
// the measure of the enclosing box, so ball_volume / estimate lies in (0, 1]
// with a dimension-dependent lower bound.
double ball_volume_estimate(const ReflectionConfig& config,
                            const std::vector<double>& center, double r);

// prod over axes of int_{-L}^{L} of the axis density; the mass a grid axis
// of half-width L should reproduce.
double box_mass(const ReflectionConfig& config, const std::vector<double>& L);

// For radial f: int f(|x|) dmu = radial_constant * int_0^inf f(r) r^(D-1) dr
// with D the homogeneous degree.  The integral runs over the given panel
// edges (ascending, starting at 0); the innermost panel treats the r^(D-1)
// factor exactly, so integrable kernel singularities at 0 are fine.
double radial_constant(const ReflectionConfig& config);
double radial_integral(const ReflectionConfig& config,
                       const std::function<double(double)>& f,
                       const std::vector<double>& edges,
                       int nodes_per_panel = 32);

}  // namespace dunkl
