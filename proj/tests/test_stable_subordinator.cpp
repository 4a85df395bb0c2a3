#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "dunkl/stable_subordinator.hpp"

using namespace dunkl;

namespace {
// alpha = 1/2 unit-time density in closed form; the independent anchor for
// both the integral and series routes.
double eta_half(double s) {
  return 0.5 / std::sqrt(3.14159265358979323846) * std::pow(s, -1.5) *
         std::exp(-0.25 / s);
}
}  // namespace

TEST_CASE("integral route reproduces the alpha=1/2 closed form") {
  const double ss[] = {0.05, 0.2, 0.5, 1.0, 2.0, 2.9};
  for (double s : ss) {
    CAPTURE(s);
    double got =
        stable_density_unit(0.5, s, SubordinatorStrategy::zolotarev_integral);
    CHECK(got == doctest::Approx(eta_half(s)).epsilon(1e-9));
  }
}

TEST_CASE("series route reproduces the alpha=1/2 closed form") {
  const double ss[] = {3.0, 4.0, 10.0, 100.0, 1e4};
  for (double s : ss) {
    CAPTURE(s);
    double got =
        stable_density_unit(0.5, s, SubordinatorStrategy::zolotarev_integral);
    CHECK(got == doctest::Approx(eta_half(s)).epsilon(1e-10));
  }
}

TEST_CASE("closed form strategy agrees with the generic route") {
  SubordinatorSpec cf(0.5, 1.0, SubordinatorStrategy::closed_form_half);
  const double ss[] = {0.1, 1.0, 7.0};
  for (double s : ss) {
    CAPTURE(s);
    CHECK(stable_density(cf, s) == doctest::Approx(eta_half(s)).epsilon(1e-13));
  }
}

TEST_CASE("laplace transform identity fixes the density for general alpha") {
  // int_0^inf exp(-lambda s) eta_{1,alpha}(s) ds = exp(-lambda^alpha)
  const double alphas[] = {0.3, 0.5, 0.75, 0.9};
  const double lambdas[] = {0.25, 1.0, 4.0};
  for (double alpha : alphas) {
    SubordinatorSpec spec(alpha, 1.0);
    SubordinationRule rule = make_subordination_rule(spec);
    for (double lambda : lambdas) {
      CAPTURE(alpha);
      CAPTURE(lambda);
      double got = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i)
        got += rule.weights[i] * std::exp(-lambda * rule.nodes[i]);
      double want = std::exp(-std::pow(lambda, alpha));
      CHECK(std::fabs(got - want) < 1e-6);
    }
  }
}

TEST_CASE("subordination rule mass is close to one on a wide range") {
  for (double alpha : {0.5, 0.75}) {
    CAPTURE(alpha);
    SubordinatorSpec spec(alpha, 1.0);
    SubordinationRule rule = make_subordination_rule(spec, 1e-8, 1e8);
    CHECK(std::fabs(rule.total() - 1.0) < 1e-4);
  }
}

TEST_CASE("time scaling is implemented exactly") {
  // eta_{t,alpha}(s) = t^{-1/alpha} eta_{1,alpha}(s t^{-1/alpha}), bit for bit
  const double alpha = 0.75, t = 3.7;
  SubordinatorSpec spec(alpha, t);
  const double scale = std::pow(t, -1.0 / alpha);
  for (double s : {0.5, 2.0, 40.0}) {
    CAPTURE(s);
    double direct = stable_density(spec, s);
    double scaled =
        scale * stable_density_unit(alpha, s * scale, spec.strategy);
    CHECK(direct == scaled);
  }
}

TEST_CASE("left tail is nonnegative, finite and increasing") {
  SubordinatorSpec spec(0.5, 2.0);
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    double s = 1e-3 * std::pow(100.0, i / 20.0);  // spans [1e-3, 1e-1]
    double v = stable_density(spec, s);
    CAPTURE(s);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(stable_density(spec, 0.0) == 0.0);
  CHECK(stable_density(spec, -1.0) == 0.0);
}

TEST_CASE("alpha one degenerates to a point mass") {
  SubordinatorSpec spec(1.0, 2.5);
  CHECK(spec.kind() == SubordinatorKind::point_mass);
  CHECK(spec.atom() == 2.5);
  CHECK_THROWS_AS(stable_density(spec, 1.0), std::logic_error);
  CHECK_THROWS_AS(make_subordination_rule(spec), std::logic_error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SubordinatorSpec(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(SubordinatorSpec(1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(SubordinatorSpec(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(SubordinatorSpec(0.5, -1.0), std::domain_error);
  CHECK_THROWS_AS(
      SubordinatorSpec(0.75, 1.0, SubordinatorStrategy::closed_form_half),
      std::domain_error);
  CHECK(SubordinatorSpec(0.5, 1.0).strategy ==
        SubordinatorStrategy::closed_form_half);
  CHECK(SubordinatorSpec(0.75, 1.0).strategy ==
        SubordinatorStrategy::zolotarev_integral);
  CHECK_THROWS_AS(stable_density_unit(
                      1.0, 1.0, SubordinatorStrategy::zolotarev_integral),
                  std::domain_error);
}
