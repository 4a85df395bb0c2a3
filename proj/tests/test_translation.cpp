#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "dunkl/grid.hpp"
#include "dunkl/translation.hpp"

using namespace dunkl;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::shared_ptr<Axis> axis_ptr(Axis a) {
  return std::make_shared<Axis>(std::move(a));
}

// one-axis gaussian heat profile with unit mass for multiplicity k
double heat_profile(double k, double t, double x) {
  return std::pow(2.0 * t, -0.5 * (1.0 + 2.0 * k)) *
         std::exp(-x * x / (4.0 * t));
}

double bump(double x, double R) {
  double u = x / R;
  return std::fabs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
}

double max_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

}  // namespace

TEST_CASE("translation by zero is the identity") {
  for (double k : {0.0, 0.5, 1.5}) {
    auto f = [](double z) { return std::exp(-0.4 * z * z) * (1.0 + z); };
    for (double y : {-2.0, 0.3, 1.7}) {
      CAPTURE(k);
      CAPTURE(y);
      CHECK(dunkl_translate_pointwise(k, f, 0.0, y) ==
            doctest::Approx(f(y)).epsilon(1e-13));
    }
  }
}

TEST_CASE("k = 0 translation is the classical shift") {
  auto f = [](double z) { return std::sin(z) + 0.2 * z * z; };
  for (double x : {-1.0, 0.6, 2.5}) {
    for (double y : {-0.8, 0.0, 1.9}) {
      CHECK(dunkl_translate_pointwise(0.0, f, x, y) ==
            doctest::Approx(f(x + y)).epsilon(1e-8));
    }
  }
}

TEST_CASE("translation of the square polynomial") {
  // exact identity: tau_x (z^2)(y) = x^2 + y^2 + 2xy/(2k+1)
  for (double k : {0.25, 0.5, 1.0, 1.5}) {
    for (double x : {0.4, 1.3}) {
      for (double y : {-1.1, 0.9, 2.2}) {
        CAPTURE(k);
        CAPTURE(x);
        CAPTURE(y);
        double got = dunkl_translate_pointwise(
            k, [](double z) { return z * z; }, x, y);
        double want = x * x + y * y + 2.0 * x * y / (2.0 * k + 1.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pointwise translation is symmetric in its arguments") {
  const double k = 1.0;
  auto f = [&](double z) { return heat_profile(k, 1.0, z) * (1.0 + 0.3 * z); };
  for (double x : {0.7, 1.8}) {
    for (double y : {-1.3, 0.4, 2.0}) {
      CAPTURE(x);
      CAPTURE(y);
      CHECK(dunkl_translate_pointwise(k, f, x, y) ==
            doctest::Approx(dunkl_translate_pointwise(k, f, y, x))
                .epsilon(1e-9)
                .scale(1.0));
    }
  }
}

TEST_CASE("spectral and explicit translation routes agree") {
  for (double k : {0.5, 1.0, 1.5}) {
    CAPTURE(k);
    // gaussian profile: analytic, modest spectral support
    {
      auto phys = axis_ptr(make_axis_uniform(k, 14.0, 12));
      auto spec = axis_ptr(make_axis_uniform(k, 8.0, 12));
      auto f = [&](double z) { return heat_profile(k, 1.0, z); };
      GridFunction fg = sample_real(phys, f);
      for (double x : {0.3, 1.0, 3.0}) {
        CAPTURE(x);
        GridFunction tr = dunkl_translate(fg, x, spec);
        double worst = 0.0;
        for (size_t i = 0; i < tr.size(); ++i) {
          double want = dunkl_translate_pointwise(k, f, x, phys->nodes[i]);
          worst = std::max(worst, std::abs(tr.values[i] - want));
        }
        CHECK(worst < 1e-5);
      }
    }
    // compact bump: non-analytic, wide spectral support
    {
      auto phys = axis_ptr(make_axis_uniform(k, 6.0, 48));
      auto spec = axis_ptr(make_axis_uniform(k, 90.0, 54));
      auto f = [](double z) { return bump(z, 2.0); };
      GridFunction fg = sample_real(phys, f);
      for (double x : {0.3, 1.0, 3.0}) {
        CAPTURE(x);
        GridFunction tr = dunkl_translate(fg, x, spec, 0, 1.0);
        double worst = 0.0;
        for (size_t i = 0; i < tr.size(); ++i) {
          double want = dunkl_translate_pointwise(k, f, x, phys->nodes[i]);
          worst = std::max(worst, std::abs(tr.values[i] - want));
        }
        CHECK(worst < 1e-5);
      }
    }
  }
}

TEST_CASE("translation of a nonnegative even function stays nonnegative") {
  for (double k : {0.5, 1.5}) {
    auto f = [&](double z) { return heat_profile(k, 0.7, z); };
    for (double x : {0.3, 1.0, 3.0}) {
      for (int i = -30; i <= 30; ++i) {
        double y = i / 6.0;
        CAPTURE(k);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(dunkl_translate_pointwise(k, f, x, y) >= -1e-8);
      }
    }
  }
}

TEST_CASE("translation preserves mass and contracts radial norms") {
  const double k = 1.0;
  auto phys = axis_ptr(make_axis_uniform(k, 16.0, 14));
  auto spec = axis_ptr(make_axis_uniform(k, 8.0, 14));
  GridFunction f =
      sample_real(phys, [&](double z) { return heat_profile(k, 1.0, z); });
  const double mass = integral(f).real();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  for (double x : {0.5, 2.0}) {
    CAPTURE(x);
    GridFunction tr = dunkl_translate(f, x, spec);
    CHECK(std::abs(integral(tr).real() - mass) < 1e-6);
    for (double p : {1.0, 2.0, kInf}) {
      CAPTURE(p);
      CHECK(lp_norm(tr, p) <= (1.0 + 1e-6) * lp_norm(f, p));
    }
  }
}

TEST_CASE("translated heat profile decays in the reflection distance") {
  // log tau_x h_t(-y) should fall at least linearly in d_G(x,y)^2 / t
  // where d_G(x,y) = min(|x-y|, |x+y|); fit the slope and require c > 0
  const double k = 0.75, t = 0.8;
  auto f = [&](double z) { return heat_profile(k, t, z); };
  std::vector<double> us, vs;  // u = d_G^2/t, v = -log tau
  for (double x : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    for (double y = -2.5; y <= 2.6; y += 0.5) {
      double w = dunkl_translate_pointwise(k, f, x, -y);
      REQUIRE(w > 0.0);
      double dg = std::min(std::fabs(x - y), std::fabs(x + y));
      us.push_back(dg * dg / t);
      vs.push_back(-std::log(w));
    }
  }
  double su = 0, sv = 0, suu = 0, suv = 0;
  const double n = us.size();
  for (size_t i = 0; i < us.size(); ++i) {
    su += us[i];
    sv += vs[i];
    suu += us[i] * us[i];
    suv += us[i] * vs[i];
  }
  double c = (n * suv - su * sv) / (n * suu - su * su);
  CHECK(c > 0.0);
  CHECK(c < 10.0);  // sane scale for a gaussian-type bound
}

TEST_CASE("convolution commutes and reproduces the heat semigroup") {
  const double k = 1.0;
  auto phys = axis_ptr(make_axis_uniform(k, 12.0, 12));
  auto spec = axis_ptr(make_axis_uniform(k, 8.0, 12));
  GridFunction f = sample_real(
      phys, [](double z) { return std::exp(-z * z) * (1.0 + 0.3 * z); });
  GridFunction g =
      sample_real(phys, [](double z) { return std::exp(-0.5 * z * z); });
  CHECK(max_diff(dunkl_convolve(f, g, spec), dunkl_convolve(g, f, spec)) <
        1e-8);

  GridFunction ht =
      sample_real(phys, [&](double z) { return heat_profile(k, 0.4, z); });
  GridFunction hs =
      sample_real(phys, [&](double z) { return heat_profile(k, 0.6, z); });
  GridFunction conv = dunkl_convolve(ht, hs, spec);
  double worst = 0.0;
  for (size_t i = 0; i < conv.size(); ++i)
    worst = std::max(worst, std::abs(conv.values[i] -
                                     heat_profile(k, 1.0, phys->nodes[i])));
  CHECK(worst < 1e-6);
}

TEST_CASE("convolution against direct quadrature of the definition") {
  const double k = 0.5;
  auto phys = axis_ptr(make_axis_uniform(k, 10.0, 10));
  auto spec = axis_ptr(make_axis_uniform(k, 8.0, 10));
  auto ffun = [&](double z) { return heat_profile(k, 0.5, z); };
  auto gfun = [&](double z) { return std::exp(-z * z); };
  GridFunction f = sample_real(phys, ffun);
  GridFunction g = sample_real(phys, gfun);
  GridFunction conv = dunkl_convolve(f, g, spec);
  // f*g(x) = int f(y) tau_x g(-y) dmu(y); evaluate at grid nodes so the
  // spectral result can be compared directly
  for (double x : {0.0, 0.8, 1.9}) {
    size_t at = 0;
    for (size_t i = 0; i < phys->size(); ++i)
      if (std::fabs(phys->nodes[i] - x) < std::fabs(phys->nodes[at] - x))
        at = i;
    const double xn = phys->nodes[at];
    CAPTURE(xn);
    double direct = 0.0;
    for (size_t i = 0; i < phys->size(); ++i)
      direct += phys->weights[i] * ffun(phys->nodes[i]) *
                dunkl_translate_pointwise(k, gfun, xn, -phys->nodes[i]);
    CHECK(std::abs(conv.values[at] - direct) < 1e-6);
  }
}

TEST_CASE("classical gaussian convolution at k = 0") {
  // with the normalized measure, e^{-y^2} * e^{-y^2/2} = e^{-x^2/3}/sqrt(3)
  auto phys = axis_ptr(make_axis_uniform(0.0, 12.0, 12));
  auto spec = axis_ptr(make_axis_uniform(0.0, 8.0, 12));
  GridFunction f =
      sample_real(phys, [](double z) { return std::exp(-z * z); });
  GridFunction g =
      sample_real(phys, [](double z) { return std::exp(-0.5 * z * z); });
  GridFunction conv = dunkl_convolve(f, g, spec);
  double worst = 0.0;
  for (size_t i = 0; i < conv.size(); ++i) {
    double x = phys->nodes[i];
    worst = std::max(worst, std::abs(conv.values[i] -
                                     std::exp(-x * x / 3.0) / std::sqrt(3.0)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("convolution norm inequality across exponent triples") {
  const double k = 0.8;
  auto phys = axis_ptr(make_axis_uniform(k, 14.0, 14));
  auto spec = axis_ptr(make_axis_uniform(k, 8.0, 14));
  GridFunction f =
      sample_real(phys, [&](double z) { return heat_profile(k, 1.0, z); });
  GridFunction g =
      sample_real(phys, [](double z) { return std::exp(-z * z); });
  const double triples[][3] = {{1, 1, 1},      {1, 2, 2},   {2, 1, 2},
                               {1, kInf, kInf}, {2, 2, kInf}, {1.5, 1.5, 3}};
  for (auto& tr : triples) {
    CAPTURE(tr[0]);
    CAPTURE(tr[1]);
    CAPTURE(tr[2]);
    YoungReport rep = young_check(f, g, spec, tr[0], tr[1], tr[2]);
    CHECK(rep.holds);
    CHECK(rep.ratio <= 1.0 + 1e-6);
    CHECK(rep.norm_conv > 0.0);
  }
}

TEST_CASE("equality witness at k = 0 for the L1 triple") {
  auto phys = axis_ptr(make_axis_uniform(0.0, 14.0, 14));
  auto spec = axis_ptr(make_axis_uniform(0.0, 8.0, 14));
  GridFunction f =
      sample_real(phys, [](double z) { return std::exp(-z * z); });
  GridFunction g =
      sample_real(phys, [](double z) { return std::exp(-0.7 * z * z); });
  YoungReport rep = young_check(f, g, spec, 1.0, 1.0, 1.0);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exponent identity is enforced") {
  auto phys = axis_ptr(make_axis_uniform(0.5, 10.0, 8));
  auto spec = axis_ptr(make_axis_uniform(0.5, 6.0, 8));
  GridFunction f =
      sample_real(phys, [](double z) { return std::exp(-z * z); });
  CHECK_THROWS_AS(young_check(f, f, spec, 2.0, 2.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(young_check(f, f, spec, 0.5, 1.0, 1.0), std::domain_error);
}
