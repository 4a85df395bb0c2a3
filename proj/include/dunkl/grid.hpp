#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace dunkl {

// Composite quadrature grid on [-L, L] for one axis carrying the weight
// c_k 2^k |x|^(2k) dx.  Nodes are symmetric about 0, ascending, and never
// include 0; weights contain the full axis measure, so sums of
// weight * f(node) approximate the axis integral of f.  The innermost panel
// on each side integrates the |x|^(2k) cusp exactly.
struct Axis {
  double k = 0.0;
  double L = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  size_t size() const { return nodes.size(); }
  size_t half_size() const { return nodes.size() / 2; }
  // positive half, index 0 nearest the origin
  double half_node(size_t i) const { return nodes[half_size() + i]; }
  double half_weight(size_t i) const { return weights[half_size() + i]; }
};

// half_edges ascend from 0 to L; panel i is [half_edges[i], half_edges[i+1]].
Axis make_axis(double k, const std::vector<double>& half_edges,
               int nodes_per_panel = 16);
Axis make_axis_uniform(double k, double L, int panels,
                       int nodes_per_panel = 16);
// uniform core of width w0 panels, then widths growing geometrically
Axis make_axis_graded(double k, double L, double w0, double growth = 1.2,
                      int nodes_per_panel = 16);
// uniform panels of the given width, with the first panel repeatedly halved
// toward 0 to resolve non-smooth spectral multipliers at the origin
Axis make_axis_spectral(double k, double xi_max, double panel_width,
                        int refine_levels = 8, int nodes_per_panel = 16);

// total axis measure of [-L, L]; equals the closed form for the axis weight
double axis_mass(const Axis& axis);

enum class Parity { even, odd, none };

struct GridFunction {
  std::shared_ptr<const Axis> axis;
  std::vector<std::complex<double>> values;

  size_t size() const { return values.size(); }
};

GridFunction sample(std::shared_ptr<const Axis> axis,
                    const std::function<std::complex<double>(double)>& f);
GridFunction sample_real(std::shared_ptr<const Axis> axis,
                         const std::function<double(double)>& f);

// even/odd within tol relative to the max sample, else none
Parity detect_parity(const GridFunction& f, double tol = 1e-12);

std::complex<double> integral(const GridFunction& f);
// L^p norm against the axis measure; p = infinity gives the max modulus
double lp_norm(const GridFunction& f, double p);

}  // namespace dunkl
