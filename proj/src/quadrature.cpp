#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

// Orthonormal three-term recurrence for the Jacobi weight (1-x)^a (1+x)^b:
//   x p_j = sb[j+1] p_{j+1} + al[j] p_j + sb[j] p_{j-1},  sb[j] = sqrt(beta_j).
struct JacobiRecurrence {
  std::vector<double> al;  // alpha_0 .. alpha_{n-1}
  std::vector<double> sb;  // sqrt(beta_0) .. sqrt(beta_n); beta_0 = total mass
};

JacobiRecurrence jacobi_recurrence(double a, double b, int n) {
  JacobiRecurrence r;
  r.al.resize(n);
  r.sb.resize(n + 1);
  const double s = a + b;
  double beta0 = std::exp((s + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                          log_gamma(b + 1.0) - log_gamma(s + 2.0));
  r.sb[0] = std::sqrt(beta0);
  for (int j = 0; j < n; ++j) {
    if (a == b) {
      r.al[j] = 0.0;
    } else if (j == 0) {
      r.al[j] = (b - a) / (s + 2.0);
    } else {
      r.al[j] = (b * b - a * a) / ((2 * j + s) * (2 * j + s + 2.0));
    }
  }
  for (int j = 1; j <= n; ++j) {
    double beta;
    if (j == 1) {
      beta = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    } else {
      beta = 4.0 * j * (j + a) * (j + b) * (j + s) /
             ((2 * j + s) * (2 * j + s) * (2 * j + s + 1.0) * (2 * j + s - 1.0));
    }
    r.sb[j] = std::sqrt(beta);
  }
  return r;
}

// Value and derivative of the n-th orthonormal polynomial.
void eval_poly(const JacobiRecurrence& r, int n, double x, double* pn,
               double* dpn) {
  double pm1 = 0.0, dm1 = 0.0;
  double p = 1.0 / r.sb[0], dp = 0.0;
  for (int j = 0; j < n; ++j) {
    double pj1 = ((x - r.al[j]) * p - r.sb[j] * pm1) / r.sb[j + 1];
    double dj1 = (p + (x - r.al[j]) * dp - r.sb[j] * dm1) / r.sb[j + 1];
    pm1 = p;
    dm1 = dp;
    p = pj1;
    dp = dj1;
  }
  *pn = p;
  *dpn = dp;
}

// Christoffel weight: 1 / sum_{j<n} p_j(x)^2.
double christoffel_weight(const JacobiRecurrence& r, int n, double x) {
  double pm1 = 0.0;
  double p = 1.0 / r.sb[0];
  double sum = p * p;
  for (int j = 0; j + 1 < n; ++j) {
    double pj1 = ((x - r.al[j]) * p - r.sb[j] * pm1) / r.sb[j + 1];
    pm1 = p;
    p = pj1;
    sum += p * p;
  }
  return 1.0 / sum;
}

std::map<std::tuple<double, double, int>, JacobiRecurrence> g_rec_cache;
std::mutex g_rec_mutex;

const JacobiRecurrence& jacobi_recurrence_cached(double a, double b, int n) {
  std::lock_guard<std::mutex> lock(g_rec_mutex);
  auto key = std::make_tuple(a, b, n);
  auto it = g_rec_cache.find(key);
  if (it == g_rec_cache.end())
    it = g_rec_cache.emplace(key, jacobi_recurrence(a, b, n)).first;
  return it->second;
}

}  // namespace

GaussRule make_gauss_rule(double a, double b, int n) {
  if (n < 1) throw std::domain_error("make_gauss_rule: n must be positive");
  if (a <= -1.0 || b <= -1.0)
    throw std::domain_error("make_gauss_rule: Jacobi exponents must exceed -1");
  const JacobiRecurrence rec = jacobi_recurrence_cached(a, b, n);
  GaussRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);

  // Roots of p_n: scan sign changes on a cos-spaced mesh, then bisect and
  // polish with Newton.
  const int scan = 24 * n + 48;
  double prev_x = -1.0 + 1e-14;
  double prev_p, dp;
  eval_poly(rec, n, prev_x, &prev_p, &dp);
  for (int i = 1; i <= scan; ++i) {
    double x = -std::cos(3.14159265358979323846 * i / scan);
    if (i == scan) x = 1.0 - 1e-14;
    double p;
    eval_poly(rec, n, x, &p, &dp);
    if (prev_p == 0.0) {
      rule.nodes.push_back(prev_x);
    } else if (prev_p * p < 0.0) {
      double lo = prev_x, hi = x, plo = prev_p;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        double pm;
        eval_poly(rec, n, mid, &pm, &dp);
        if (pm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (plo * pm < 0.0) {
          hi = mid;
        } else {
          lo = mid;
          plo = pm;
        }
        if (hi - lo < 4e-16 * std::max(1.0, std::abs(mid))) break;
      }
      double root = 0.5 * (lo + hi);
      for (int it = 0; it < 4; ++it) {
        double p2, d2;
        eval_poly(rec, n, root, &p2, &d2);
        if (d2 == 0.0) break;
        double step = p2 / d2;
        double next = root - step;
        if (next <= -1.0 || next >= 1.0) break;
        root = next;
        if (std::abs(step) < 1e-16) break;
      }
      rule.nodes.push_back(root);
    }
    prev_x = x;
    prev_p = p;
  }
  if (static_cast<int>(rule.nodes.size()) != n)
    throw std::runtime_error("make_gauss_rule: root scan failed");
  std::sort(rule.nodes.begin(), rule.nodes.end());
  for (double x : rule.nodes)
    rule.weights.push_back(christoffel_weight(rec, n, x));
  return rule;
}

namespace {
std::map<std::tuple<double, double, int>, GaussRule> g_rule_cache;
std::mutex g_rule_mutex;
}  // namespace

const GaussRule& gauss_rule(double a, double b, int n) {
  {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rule_cache.find(std::make_tuple(a, b, n));
    if (it != g_rule_cache.end()) return it->second;
  }
  GaussRule rule = make_gauss_rule(a, b, n);
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto [it, inserted] =
      g_rule_cache.emplace(std::make_tuple(a, b, n), std::move(rule));
  return it->second;
}

namespace {

double panel_gauss(const std::function<double(double)>& f, double lo, double hi,
                   const GaussRule& rule) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

double adaptive_rec(const std::function<double(double)>& f, double lo,
                    double hi, double tol, int depth, const GaussRule& g7,
                    const GaussRule& g15) {
  double coarse = panel_gauss(f, lo, hi, g7);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double fine = 0.0, absum = 0.0;
  for (size_t i = 0; i < g15.nodes.size(); ++i) {
    double term = g15.weights[i] * f(c + h * g15.nodes[i]);
    fine += term;
    absum += std::abs(term);
  }
  fine *= h;
  absum *= h;
  // Below the rounding floor of the panel sum the estimates cannot be told
  // apart, and halving the budget further would recurse without progress.
  double floor_tol = 1e-15 * absum;
  // Splitting below ~1e3 ulps would map Gauss nodes onto the endpoints.
  double width_floor = 1e-13 * (std::abs(lo) + std::abs(hi)) + 1e-306;
  if (std::abs(fine - coarse) <= std::max(tol, floor_tol) || depth <= 0 ||
      hi - lo < width_floor)
    return fine;
  double mid = 0.5 * (lo + hi);
  return adaptive_rec(f, lo, mid, 0.5 * tol, depth - 1, g7, g15) +
         adaptive_rec(f, mid, hi, 0.5 * tol, depth - 1, g7, g15);
}

}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double lo,
                     double hi, double abs_tol, int max_depth) {
  if (!(hi > lo)) return 0.0;
  const GaussRule& g7 = gauss_rule(0.0, 0.0, 7);
  const GaussRule& g15 = gauss_rule(0.0, 0.0, 15);
  return adaptive_rec(f, lo, hi, abs_tol, max_depth, g7, g15);
}

std::vector<double> panel_edges_uniform(double lo, double hi, int panels) {
  if (panels < 1) throw std::domain_error("panel_edges_uniform: panels >= 1");
  std::vector<double> e(panels + 1);
  for (int i = 0; i <= panels; ++i)
    e[i] = lo + (hi - lo) * static_cast<double>(i) / panels;
  e.back() = hi;
  return e;
}

std::vector<double> panel_edges_geometric(double w0, double L, double growth) {
  if (!(w0 > 0.0) || !(L > w0) || !(growth > 1.0))
    throw std::domain_error("panel_edges_geometric: bad layout");
  std::vector<double> e{0.0};
  double x = 0.0, w = w0;
  while (x < L) {
    x = std::min(x + w, L);
    e.push_back(x);
    w *= growth;
  }
  // Merge a stub final panel into its neighbour.
  if (e.size() >= 3 && (e.back() - e[e.size() - 2]) < 0.2 * w0) {
    e[e.size() - 2] = e.back();
    e.pop_back();
  }
  return e;
}

}  // namespace dunkl
