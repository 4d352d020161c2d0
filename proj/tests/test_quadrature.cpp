#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "photon/errors.hpp"
#include "photon/quadrature.hpp"
#include "photon/states.hpp"

using namespace photon;

TEST_CASE("gauss-like radial rules integrate weighted monomials exactly") {
  for (double s : {0.0, 1.0, 0.236, 2.0 * 0.618 - 1.0 + 1e-3, 3.5}) {
    const int n = 12;
    const RadialRule r = radial_rule(RadialWeight::GaussLike, n, s);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    for (int j = 0; j < 2 * n; j += 3) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += r.weights[i] * std::pow(r.nodes[i], s + j) * std::exp(-r.nodes[i] * r.nodes[i]);
      }
      CAPTURE(s);
      CAPTURE(j);
      CHECK(sum == doctest::Approx(0.5 * boost::math::tgamma(0.5 * (s + j + 1.0))).epsilon(1e-12));
    }
  }
}

TEST_CASE("exponential radial rules integrate weighted monomials exactly") {
  for (double s : {0.0, 2.0 * 1.41421356237 - 2.0, 1.0}) {
    const int n = 10;
    const RadialRule r = radial_rule(RadialWeight::Exponential, n, s);
    for (int j = 0; j < 2 * n; j += 4) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += r.weights[i] * std::pow(r.nodes[i], s + j) * std::exp(-r.nodes[i]);
      }
      CHECK(sum == doctest::Approx(boost::math::tgamma(s + j + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-legendre exactness") {
  std::vector<double> x, w;
  gauss_legendre(9, x, w);
  for (int p = 0; p < 18; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sum += w[i] * std::pow(x[i], p);
    }
    CHECK(sum == doctest::Approx(p % 2 ? 0.0 : 2.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("quadrature domain checks") {
  CHECK_THROWS_AS(radial_rule(RadialWeight::GaussLike, 201), DomainError);
  CHECK_THROWS_AS(radial_rule(RadialWeight::GaussLike, 8, -1.0), DomainError);
  CHECK_THROWS_AS(build_quadrature(RadialWeight::GaussLike, 3, 8, 8, 0), DomainError);
  CHECK_THROWS_AS(build_quadrature(RadialWeight::GaussLike, 8, 8, 2, 0), DomainError);
}

TEST_CASE("solid angle and radial integration") {
  const auto q = build_quadrature(RadialWeight::GaussLike, 8, 10, 8, 2);
  CHECK(integrate_solid_angle(q, [](double, double) { return 1.0; }) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(integrate_solid_angle(q, [](double t, double p) { return std::pow(std::cos(t) * std::cos(p), 2); }) ==
        doctest::Approx(4.0 * M_PI / 3.0 * 0.5 * 1.0).epsilon(1e-13));
  // int kappa^2 exp(-kappa^2) = sqrt(pi)/4
  CHECK(integrate_radial(q, [](double k) { return std::exp(-k * k); }) == doctest::Approx(std::sqrt(M_PI) / 4).epsilon(1e-13));
}

TEST_CASE("default scheme follows the radial hint") {
  const auto single = default_scheme(saturator_single(1));
  CHECK(single.radial.family == RadialWeight::GaussLike);
  const auto beam = default_scheme(saturator_beam(1));
  CHECK(beam.radial.family == RadialWeight::Exponential);
  const auto wide = default_scheme(gaussian_1d(4.0));
  CHECK(wide.ntheta() > 24);
}

TEST_CASE("compensated sum keeps small terms") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}
