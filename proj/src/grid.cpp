#include "dunkl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dunkl/quadrature.hpp"
#include "dunkl/reflection.hpp"

namespace dunkl {

Axis make_axis(double k, const std::vector<double>& half_edges,
               int nodes_per_panel) {
  if (!(k >= 0.0)) throw std::domain_error("make_axis: multiplicity must be >= 0");
  if (half_edges.size() < 2 || half_edges.front() != 0.0)
    throw std::domain_error("make_axis: edges must start at 0");
  for (size_t i = 0; i + 1 < half_edges.size(); ++i)
    if (!(half_edges[i] < half_edges[i + 1]))
      throw std::domain_error("make_axis: edges must ascend");
  if (nodes_per_panel < 2)
    throw std::domain_error("make_axis: need >= 2 nodes per panel");

  const double axis_c =
      ReflectionConfig::axis_normalization(k) * std::pow(2.0, k);

  std::vector<double> pos_nodes, pos_weights;
  // innermost panel [0, e]: Gauss-Jacobi with weight (1+u)^(2k) makes the
  // |x|^(2k) factor exact
  {
    const double e = half_edges[1];
    const GaussRule& gj = gauss_rule(0.0, 2.0 * k, nodes_per_panel);
    const double scale = std::pow(0.5 * e, 2.0 * k + 1.0);
    for (size_t i = 0; i < gj.nodes.size(); ++i) {
      pos_nodes.push_back(0.5 * e * (1.0 + gj.nodes[i]));
      pos_weights.push_back(axis_c * scale * gj.weights[i]);
    }
  }
  const GaussRule& gl = gauss_rule(0.0, 0.0, nodes_per_panel);
  for (size_t p = 1; p + 1 < half_edges.size(); ++p) {
    const double a = half_edges[p], b = half_edges[p + 1];
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      double x = c + h * gl.nodes[i];
      pos_nodes.push_back(x);
      pos_weights.push_back(axis_c * h * gl.weights[i] *
                            std::pow(x, 2.0 * k));
    }
  }

  Axis axis;
  axis.k = k;
  axis.L = half_edges.back();
  const size_t n = pos_nodes.size();
  axis.nodes.resize(2 * n);
  axis.weights.resize(2 * n);
  for (size_t i = 0; i < n; ++i) {
    axis.nodes[n + i] = pos_nodes[i];
    axis.weights[n + i] = pos_weights[i];
    axis.nodes[n - 1 - i] = -pos_nodes[i];
    axis.weights[n - 1 - i] = pos_weights[i];
  }
  return axis;
}

Axis make_axis_uniform(double k, double L, int panels, int nodes_per_panel) {
  if (!(L > 0.0) || panels < 1)
    throw std::domain_error("make_axis_uniform: bad layout");
  return make_axis(k, panel_edges_uniform(0.0, L, panels), nodes_per_panel);
}

Axis make_axis_graded(double k, double L, double w0, double growth,
                      int nodes_per_panel) {
  return make_axis(k, panel_edges_geometric(w0, L, growth), nodes_per_panel);
}

Axis make_axis_spectral(double k, double xi_max, double panel_width,
                        int refine_levels, int nodes_per_panel) {
  if (!(xi_max > 0.0) || !(panel_width > 0.0) || refine_levels < 0)
    throw std::domain_error("make_axis_spectral: bad layout");
  double w = std::min(panel_width, xi_max);
  std::vector<double> edges;
  for (int j = refine_levels; j >= 1; --j) edges.push_back(w / std::pow(2.0, j));
  double x = w;
  while (x < xi_max - 0.5 * w) {
    edges.push_back(x);
    x += w;
  }
  edges.push_back(xi_max);
  edges.insert(edges.begin(), 0.0);
  return make_axis(k, edges, nodes_per_panel);
}

double axis_mass(const Axis& axis) {
  double m = 0.0;
  for (double w : axis.weights) m += w;
  return m;
}

GridFunction sample(std::shared_ptr<const Axis> axis,
                    const std::function<std::complex<double>(double)>& f) {
  if (!axis) throw std::domain_error("sample: null axis");
  GridFunction g;
  g.values.reserve(axis->size());
  for (double x : axis->nodes) g.values.push_back(f(x));
  g.axis = std::move(axis);
  return g;
}

GridFunction sample_real(std::shared_ptr<const Axis> axis,
                         const std::function<double(double)>& f) {
  return sample(std::move(axis),
                [&f](double x) { return std::complex<double>(f(x), 0.0); });
}

Parity detect_parity(const GridFunction& f, double tol) {
  const size_t n = f.size();
  if (!f.axis || n != f.axis->size() || n % 2 != 0)
    throw std::domain_error("detect_parity: malformed grid function");
  double max_abs = 0.0;
  for (const auto& v : f.values) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return Parity::even;
  double even_dev = 0.0, odd_dev = 0.0;
  for (size_t i = 0; i < n / 2; ++i) {
    const auto& a = f.values[i];
    const auto& b = f.values[n - 1 - i];  // mirror node of i
    even_dev = std::max(even_dev, std::abs(a - b));
    odd_dev = std::max(odd_dev, std::abs(a + b));
  }
  if (even_dev <= tol * max_abs) return Parity::even;
  if (odd_dev <= tol * max_abs) return Parity::odd;
  return Parity::none;
}

std::complex<double> integral(const GridFunction& f) {
  if (!f.axis || f.size() != f.axis->size())
    throw std::domain_error("integral: malformed grid function");
  std::complex<double> sum = 0.0;
  for (size_t i = 0; i < f.size(); ++i) sum += f.axis->weights[i] * f.values[i];
  return sum;
}

double lp_norm(const GridFunction& f, double p) {
  if (!f.axis || f.size() != f.axis->size())
    throw std::domain_error("lp_norm: malformed grid function");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
  double sum = 0.0;
  for (size_t i = 0; i < f.size(); ++i)
    sum += f.axis->weights[i] * std::pow(std::abs(f.values[i]), p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace dunkl
