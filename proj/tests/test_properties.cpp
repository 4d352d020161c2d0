// Randomized invariants of the functionals.
#include <doctest.h>

#include <cmath>
#include <random>

#include "photon/beams.hpp"
#include "photon/constants.hpp"
#include "photon/functionals.hpp"
#include "photon/states.hpp"
#include "photon/variational.hpp"

using namespace photon;

namespace {

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Vec3(g(rng), g(rng), g(rng)).normalized();
}

std::vector<double> random_coeffs(std::mt19937_64& rng, int q) {
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<double> c(q);
  for (double& x : c) x = u(rng);
  return c;
}

} // namespace

TEST_CASE("gamma2 does not depend on the gauge axis") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 4; ++i) {
    const AxisVector n(random_unit(rng));
    for (int m : {-1, 0, 1}) {
      const auto st = saturator_single(m, 1.0, 0, 1, n);
      CHECK(expectation_report(st).gamma2 == doctest::Approx(kGammaSingle * kGammaSingle).epsilon(1e-10));
      const auto mp = expectation_report(st).mean_P;
      CHECK((mp - mp.dot(n.n()) * n.n()).norm() < 1e-12);
    }
  }
}

TEST_CASE("helicity flip leaves the functionals unchanged") {
  for (int m : {-1, 0, 1}) {
    const auto plus = expectation_report(saturator_single(m, 1.0, 0, 1));
    const auto minus = expectation_report(saturator_single(-m, 1.0, 0, -1));
    CHECK(minus.gamma2 == doctest::Approx(plus.gamma2).epsilon(1e-12));
    CHECK(beam_gamma2(saturator_beam(-m, 1.0, 0, -1)).gamma2 ==
          doctest::Approx(beam_gamma2(saturator_beam(m)).gamma2).epsilon(1e-12));
  }
}

TEST_CASE("random trial states respect the bounds") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 12; ++i) {
    const int q = 1 + static_cast<int>(rng() % 4);
    const auto c = random_coeffs(rng, q);
    const auto st = trial_state(1, c);
    const auto r = expectation_report(st, default_scheme(st, {48, 40, 8}));
    CAPTURE(q);
    CHECK(r.gamma2 >= kGammaSingle * kGammaSingle - 1e-9);
    CHECK(r.variance_product >= 2.25);
    CHECK(r.varR * r.varP == doctest::Approx(r.variance_product).epsilon(1e-12));
    CHECK(beam_gamma2(st, default_scheme(st, {48, 40, 8})).gamma2 >= kGammaBeam * kGammaBeam - 1e-9);
  }
}

TEST_CASE("trial family rescaling") {
  std::mt19937_64 rng(8);
  const auto c = random_coeffs(rng, 2);
  for (double a : {0.5, 2.0}) {
    const auto base = expectation_report(trial_state(1, c, 1.0));
    const auto scaled = expectation_report(trial_state(1, c, a));
    CHECK(scaled.variance_product == doctest::Approx(base.variance_product).epsilon(1e-10));
    CHECK(scaled.mean_P.z() * a == doctest::Approx(base.mean_P.z()).epsilon(1e-10));
  }
}

TEST_CASE("focal volume scales as the momentum dispersion to -3/2") {
  const auto r = beam_gamma2(saturator_beam(0));
  for (double factor : {10.0, 100.0}) {
    const auto f = focal_volume_report(r.dispersionR, factor * r.dispersionP, kGammaBeam);
    CHECK(r.focal.V_min / f.V_min == doctest::Approx(std::pow(factor, 1.5)).epsilon(1e-12));
  }
}

TEST_CASE("nested trial families can only lower the minimum") {
  const TrialFamily family(4);
  double prev = INFINITY;
  std::vector<double> warm;
  for (int q = 0; q <= 4; ++q) {
    const auto run = minimize_variance_product(q, family, {}, warm);
    CHECK(run.variance_product <= prev + 1e-10);
    prev = run.variance_product;
    warm = run.coefficients;
  }
}
