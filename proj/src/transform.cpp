#include "dunkl/transform.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "dunkl/parallel.hpp"
#include "dunkl/special_functions.hpp"

namespace dunkl {

namespace {

// kernel factors pairing the even and odd parts across the transform
inline double kernel_even(double k, double z) {
  return normalized_bessel_j(k - 0.5, z);
}
inline double kernel_odd(double k, double z) {
  return z / (2.0 * k + 1.0) * normalized_bessel_j(k + 0.5, z);
}

struct HalfSplit {
  std::vector<std::complex<double>> even, odd;  // includes factor 2 w
};

// split into even/odd parts on the positive half, pre-weighted for the
// half-axis sum 2 sum_p w_p (..)
HalfSplit split_weighted(const GridFunction& f) {
  const Axis& axis = *f.axis;
  const size_t h = axis.half_size();
  HalfSplit s;
  s.even.resize(h);
  s.odd.resize(h);
  for (size_t p = 0; p < h; ++p) {
    const auto& plus = f.values[h + p];
    const auto& minus = f.values[h - 1 - p];
    const double w2 = 2.0 * axis.half_weight(p);
    s.even[p] = 0.5 * w2 * (plus + minus);
    s.odd[p] = 0.5 * w2 * (plus - minus);
  }
  return s;
}

// pure-parity data leaves one half identically zero; its matrix pass would
// only accumulate zeros, so it is skipped
bool all_zero(const std::vector<std::complex<double>>& v) {
  for (const auto& z : v)
    if (z.real() != 0.0 || z.imag() != 0.0) return false;
  return true;
}

void check_function(const GridFunction& f, const Axis* expected,
                    const char* who) {
  if (!f.axis || f.size() != f.axis->size())
    throw std::domain_error(std::string(who) + ": malformed grid function");
  if (expected && f.axis.get() != expected)
    throw std::domain_error(std::string(who) +
                            ": grid function lives on a different axis");
}

}  // namespace

double boundary_ratio(const GridFunction& f) {
  check_function(f, nullptr, "boundary_ratio");
  const size_t n = f.size();
  const size_t m = std::max<size_t>(1, n / 40);
  double max_all = 0.0, max_edge = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double a = std::abs(f.values[i]);
    max_all = std::max(max_all, a);
    if (i < m || i >= n - m) max_edge = std::max(max_edge, a);
  }
  return max_all == 0.0 ? 0.0 : max_edge / max_all;
}

TransformPlan::TransformPlan(double k, std::shared_ptr<const Axis> physical,
                             std::shared_ptr<const Axis> spectral, int threads)
    : k_(k),
      threads_(threads),
      physical_(std::move(physical)),
      spectral_(std::move(spectral)) {
  if (!physical_ || !spectral_)
    throw std::domain_error("TransformPlan: null axis");
  if (!(k >= 0.0))
    throw std::domain_error("TransformPlan: multiplicity must be >= 0");
  const size_t np = physical_->half_size();
  const size_t ns = spectral_->half_size();
  even_.resize(ns * np);
  odd_.resize(ns * np);
  parallel_for(ns, threads_, [&](size_t s) {
    const double xi = spectral_->half_node(s);
    double* re = &even_[s * np];
    double* ro = &odd_[s * np];
    for (size_t p = 0; p < np; ++p) {
      const double z = xi * physical_->half_node(p);
      re[p] = kernel_even(k_, z);
      ro[p] = kernel_odd(k_, z);
    }
  });
}

GridFunction TransformPlan::forward(const GridFunction& f) const {
  check_function(f, physical_.get(), "TransformPlan::forward");
  const size_t np = physical_->half_size();
  const size_t ns = spectral_->half_size();
  HalfSplit in = split_weighted(f);
  const bool do_even = !all_zero(in.even);
  const bool do_odd = !all_zero(in.odd);
  GridFunction out;
  out.axis = spectral_;
  out.values.assign(2 * ns, 0.0);
  parallel_for(ns, threads_, [&](size_t s) {
    const double* re = &even_[s * np];
    const double* ro = &odd_[s * np];
    std::complex<double> a = 0.0, b = 0.0;
    if (do_even && do_odd) {
      for (size_t p = 0; p < np; ++p) {
        a += re[p] * in.even[p];
        b += ro[p] * in.odd[p];
      }
    } else if (do_even) {
      for (size_t p = 0; p < np; ++p) a += re[p] * in.even[p];
    } else if (do_odd) {
      for (size_t p = 0; p < np; ++p) b += ro[p] * in.odd[p];
    }
    // G(+xi) = a - i b, G(-xi) = a + i b
    const std::complex<double> minus_ib(b.imag(), -b.real());
    out.values[ns + s] = a + minus_ib;
    out.values[ns - 1 - s] = a - minus_ib;
  });
  return out;
}

GridFunction TransformPlan::inverse(const GridFunction& g) const {
  check_function(g, spectral_.get(), "TransformPlan::inverse");
  const size_t np = physical_->half_size();
  const size_t ns = spectral_->half_size();
  HalfSplit in = split_weighted(g);
  const bool do_even = !all_zero(in.even);
  const bool do_odd = !all_zero(in.odd);
  GridFunction out;
  out.axis = physical_;
  out.values.assign(2 * np, 0.0);
  // column blocks keep the row-major matrices cache-friendly
  const size_t block = 256;
  const size_t nblocks = (np + block - 1) / block;
  parallel_for(nblocks, threads_, [&](size_t bi) {
    const size_t p0 = bi * block;
    const size_t p1 = std::min(np, p0 + block);
    std::vector<std::complex<double>> c(p1 - p0, 0.0), d(p1 - p0, 0.0);
    for (size_t s = 0; s < ns; ++s) {
      const double* re = &even_[s * np];
      const double* ro = &odd_[s * np];
      const std::complex<double> ge = in.even[s];
      const std::complex<double> go = in.odd[s];
      if (do_even && do_odd) {
        for (size_t p = p0; p < p1; ++p) {
          c[p - p0] += re[p] * ge;
          d[p - p0] += ro[p] * go;
        }
      } else if (do_even) {
        for (size_t p = p0; p < p1; ++p) c[p - p0] += re[p] * ge;
      } else if (do_odd) {
        for (size_t p = p0; p < p1; ++p) d[p - p0] += ro[p] * go;
      }
    }
    for (size_t p = p0; p < p1; ++p) {
      const std::complex<double>& cc = c[p - p0];
      const std::complex<double>& dd = d[p - p0];
      // f(+x) = c + i d, f(-x) = c - i d
      const std::complex<double> id(-dd.imag(), dd.real());
      out.values[np + p] = cc + id;
      out.values[np - 1 - p] = cc - id;
    }
  });
  return out;
}

namespace {

GridFunction streamed_apply(const GridFunction& in,
                            std::shared_ptr<const Axis> target, double k,
                            int threads, bool inverse_sign) {
  const Axis& from = *in.axis;
  const size_t nf = from.half_size();
  const size_t nt = target->half_size();
  HalfSplit split = split_weighted(in);
  GridFunction out;
  out.values.assign(2 * nt, 0.0);
  parallel_for(nt, threads, [&](size_t s) {
    const double y = target->half_node(s);
    std::complex<double> a = 0.0, b = 0.0;
    for (size_t p = 0; p < nf; ++p) {
      const double z = y * from.half_node(p);
      a += kernel_even(k, z) * split.even[p];
      b += kernel_odd(k, z) * split.odd[p];
    }
    std::complex<double> ib(-b.imag(), b.real());
    if (!inverse_sign) ib = -ib;
    out.values[nt + s] = a + ib;
    out.values[nt - 1 - s] = a - ib;
  });
  out.axis = std::move(target);
  return out;
}

void check_boundary(const GridFunction& f, double tol, const char* who) {
  double r = boundary_ratio(f);
  if (r > tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e exceeds %.3e", r, tol);
    throw TruncationError(std::string(who) +
                              ": data has not decayed at the axis edge "
                              "(boundary ratio " +
                              buf + ")",
                          r);
  }
}

}  // namespace

GridFunction dunkl_transform(const GridFunction& f,
                             std::shared_ptr<const Axis> spectral, int threads,
                             double boundary_tol) {
  check_function(f, nullptr, "dunkl_transform");
  if (!spectral) throw std::domain_error("dunkl_transform: null axis");
  check_boundary(f, boundary_tol, "dunkl_transform");
  return streamed_apply(f, std::move(spectral), f.axis->k, threads, false);
}

GridFunction dunkl_inverse_transform(const GridFunction& g,
                                     std::shared_ptr<const Axis> physical,
                                     int threads, double boundary_tol) {
  check_function(g, nullptr, "dunkl_inverse_transform");
  if (!physical) throw std::domain_error("dunkl_inverse_transform: null axis");
  check_boundary(g, boundary_tol, "dunkl_inverse_transform");
  return streamed_apply(g, std::move(physical), g.axis->k, threads, true);
}

}  // namespace dunkl
