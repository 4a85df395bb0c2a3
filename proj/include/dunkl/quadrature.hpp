#pragma once

#include <functional>
#include <vector>

namespace dunkl {

// n-point Gauss rule on (-1, 1) for the Jacobi weight (1-u)^a (1+u)^b.
// a = b = 0 is Gauss-Legendre.  Weights sum to the weight's total mass.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule make_gauss_rule(double a, double b, int n);

// Cached variant; the returned reference stays valid for the process
// lifetime and lookup is safe under concurrent access.
const GaussRule& gauss_rule(double a, double b, int n);

// Adaptive quadrature: 15-point Gauss with an embedded 7-point estimate,
// recursive bisection until the panel error estimate is below abs_tol.
double adaptive_quad(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol, int max_depth = 52);

// Panel edge layouts on [lo, hi] used by the grid builders.
std::vector<double> panel_edges_uniform(double lo, double hi, int panels);

// Edges 0, w0, w0*g, w0*g^2, ... capped at L; the first edge list entry is 0.
std::vector<double> panel_edges_geometric(double w0, double L, double growth);

}  // namespace dunkl
