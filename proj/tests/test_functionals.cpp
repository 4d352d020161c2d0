#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"
#include "photon/states.hpp"

using namespace photon;

namespace {
const double kBound = kGammaSingle * kGammaSingle;
}

TEST_CASE("single-photon saturators reach the bound") {
  for (int m : {-1, 0, 1}) {
    const auto r = expectation_report(saturator_single(m));
    CHECK(r.gamma2 == doctest::Approx(kBound).epsilon(1e-10));
    CHECK(r.mean_R.norm() < 1e-12);
    CHECK_FALSE(r.divergent);
    // <R.R> = <P.P> = 1 + sqrt5/2 at a = 1.
    CHECK(r.RR / r.norm == doctest::Approx(kGammaSingle).epsilon(1e-10));
    CHECK(r.PP / r.norm == doctest::Approx(kGammaSingle).epsilon(1e-10));
  }
}

TEST_CASE("mean momentum of the m = +-1 saturators") {
  const double oracle = boost::math::tgamma(1.5 + 0.5 * kSqrt5) / (2.0 * boost::math::tgamma(1.0 + 0.5 * kSqrt5));
  CHECK(oracle == doctest::Approx(0.686).epsilon(1e-3));
  CHECK(expectation_report(saturator_single(1)).mean_P.z() == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(expectation_report(saturator_single(-1)).mean_P.z() == doctest::Approx(-oracle).epsilon(1e-10));
  CHECK(std::abs(expectation_report(saturator_single(0)).mean_P.z()) < 1e-12);
  const auto r = expectation_report(saturator_single(1));
  CHECK(r.variance_product == doctest::Approx(kBound - kGammaSingle * oracle * oracle).epsilon(1e-10));
}

TEST_CASE("radial levels give (2n + gamma)^2") {
  for (int n = 1; n <= 2; ++n) {
    const double g = 2.0 * n + kGammaSingle;
    CHECK(expectation_report(saturator_single(1, 1.0, n)).gamma2 == doctest::Approx(g * g).epsilon(1e-9));
  }
}

TEST_CASE("scale and normalization invariance") {
  for (double a : {0.25, 1.0, 3.0}) {
    const auto r = expectation_report(saturator_single(0, a));
    CHECK(r.gamma2 == doctest::Approx(kBound).epsilon(1e-10));
    CHECK(r.RR / r.norm == doctest::Approx(kGammaSingle * a * a).epsilon(1e-10));
  }
  const auto st = trial_state(1, {0.3, -0.2});
  const auto scheme = default_scheme(st, {48, 40, 8});
  CHECK(gamma_squared(st, scheme) == doctest::Approx(gamma_squared(superpose({{3.0, st}}), scheme)).epsilon(1e-12));
}

TEST_CASE("json report keys") {
  const auto j = to_json(expectation_report(saturator_single(1)));
  for (const char* key : {"norm", "mean_R", "RR", "mean_P", "PP", "varR", "varP", "gamma2", "variance_product"}) {
    CHECK(j.contains(key));
  }
  CHECK(j.size() == 9);
}

TEST_CASE("shifted functional") {
  const auto st = saturator_single(1);
  const auto scheme = default_scheme(st);
  CHECK(shifted_gamma2(st, 0.0, scheme) == doctest::Approx(gamma_squared(st, scheme)).epsilon(1e-13));
  CHECK(shifted_gamma2(st, 2.0, scheme) < gamma_squared(st, scheme));
  CHECK_THROWS_AS(shifted_gamma2(st, -1.0, scheme), DomainError);
}

TEST_CASE("one-dimensional saturation by the Gaussian") {
  for (double w : {0.5, 1.0, 2.0}) {
    const auto st = gaussian_1d(w);
    CHECK(one_dimensional_product(st, st.axis(), default_scheme(st)) == doctest::Approx(0.5).epsilon(1e-8));
  }
  const auto st = saturator_single(0);
  CHECK(one_dimensional_product(st, st.axis(), default_scheme(st)) > 0.5);
  CHECK_THROWS_AS(one_dimensional_product(st, AxisVector(Vec3::UnitX()), default_scheme(st)), DomainError);
}

TEST_CASE("s-wave state diverges on the axis") {
  PhotonState::Analytic s_wave;
  s_wave.hint = RadialHint{RadialHint::Decay::Gaussian, 1.0, 1.0, 0.0};
  s_wave.fn = [](double k, double, double) {
    ModeSample m;
    m.f = k * std::exp(-0.5 * k * k);
    m.df_dk = (1.0 - k * k) * std::exp(-0.5 * k * k);
    return m;
  };
  const PhotonState st(s_wave, 1.0, 1, AxisVector::z());
  CHECK(axis_divergence(st));
  CHECK(expectation_report(st).divergent);
  CHECK_FALSE(axis_divergence(saturator_single(1)));
}

TEST_CASE("focal volume report") {
  const auto r = focal_volume_report(2.0, 3.0, kGammaBeam);
  CHECK(r.V_f == doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(r.V_min == doctest::Approx(std::pow(kGammaBeam, 3) / std::pow(3.0, 1.5)));
  CHECK(r.satisfied == (r.V_f >= r.V_min));
  CHECK_FALSE(focal_volume_report(0.01, 1.0, kGammaBeam).satisfied);
  CHECK_THROWS_AS(focal_volume_report(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(focal_volume_report(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(focal_volume_report(1.0, 1.0, 0.0), DomainError);
}
