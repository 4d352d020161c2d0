#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "photon/errors.hpp"
#include "photon/specfun.hpp"

using namespace photon;

namespace {

// Explicit binomial-sum form of the Jacobi polynomial.
double jacobi_sum(int n, double alpha, double beta, double x) {
  auto binom = [](double top, int k) {
    return std::tgamma(top + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(top - k + 1.0));
  };
  double total = 0.0;
  for (int s = 0; s <= n; ++s) {
    total += binom(n + alpha, n - s) * binom(n + beta, s) * std::pow(0.5 * (x - 1.0), s) *
             std::pow(0.5 * (x + 1.0), n - s);
  }
  return total;
}

// Wigner's factorial sum for d^j_{mp m}(beta).
double wigner_sum(int j, int mp, int m, double beta) {
  using boost::math::factorial;
  const double pre = std::sqrt(factorial<double>(j + mp) * factorial<double>(j - mp) * factorial<double>(j + m) *
                               factorial<double>(j - m));
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double total = 0.0;
  for (int k = 0; k <= 2 * j; ++k) {
    const int a = j + m - k, b = mp - m + k, d = j - mp - k;
    if (a < 0 || b < 0 || d < 0) {
      continue;
    }
    const double sign = ((mp - m + k) % 2 == 0) ? 1.0 : -1.0;
    total += sign * pre / (factorial<double>(a) * factorial<double>(k) * factorial<double>(b) * factorial<double>(d)) *
             std::pow(c, 2 * j + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k);
  }
  return total;
}

} // namespace

TEST_CASE("gamma_fn agrees with the library gamma") {
  for (double x : {0.1, 0.5, 1.0, 1.618, 2.118033988749895, 2.8284271247461903, 5.5, 12.25, 30.0}) {
    CHECK(gamma_fn(x) == doctest::Approx(boost::math::tgamma(x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("kummer_1f1 against boost hypergeometric_1F1") {
  struct Case {
    double a, b, x;
  };
  const std::vector<Case> cases{{0.5, 1.5, 0.3},  {1.2, 3.4, 2.0},  {2.5, 1.25, 5.0},  {-0.3, 2.0, 1.0},
                                {0.7, 0.9, 10.0}, {-2.0, 3.2, -4.0}, {-3.0, 2.236, 7.5}, {1.0, 2.0, 0.0}};
  for (const auto& c : cases) {
    CAPTURE(c.a);
    CAPTURE(c.b);
    CAPTURE(c.x);
    CHECK(kummer_1f1(c.a, c.b, c.x) == doctest::Approx(boost::math::hypergeometric_1F1(c.a, c.b, c.x)).epsilon(1e-12));
  }
}

TEST_CASE("kummer_1f1 domain") {
  CHECK_THROWS_AS(kummer_1f1(0.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(kummer_1f1(0.5, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS(kummer_1f1(0.5, 1.5, -1.0), DomainError);
  // A terminating series is fine at negative argument.
  CHECK(kummer_1f1(-1.0, 2.0, -3.0) == doctest::Approx(2.5));
}

TEST_CASE("kummer_polynomial evaluates the terminating series") {
  for (int n = 0; n <= 5; ++n) {
    for (double b : {1.5, 2.23606797749979, 3.8284271247461903}) {
      const auto p = kummer_polynomial(n, b);
      CHECK(p.degree() == n);
      for (double x : {-2.0, 0.0, 0.7, 3.0}) {
        CHECK(p(x) == doctest::Approx(boost::math::hypergeometric_1F1(-n, b, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("polynomial derivative") {
  const PolynomialCoeffs p{{1.0, -2.0, 0.5, 3.0}};
  CHECK(p.derivative(1.5) == doctest::Approx(-2.0 + 1.5 + 9.0 * 2.25));
}

TEST_CASE("jacobi_p against the binomial sum") {
  for (int n = 0; n <= 6; ++n) {
    for (double alpha : {0.0, 1.0, 2.0, 0.5}) {
      for (double beta : {0.0, 2.0, 1.5}) {
        for (double x : {-0.9, -0.2, 0.0, 0.4, 0.95}) {
          CHECK(jacobi_p(n, alpha, beta, x) == doctest::Approx(jacobi_sum(n, alpha, beta, x)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("wigner_d against the factorial sum") {
  for (int j = 1; j <= 4; ++j) {
    for (int m = -j; m <= j; ++m) {
      for (int lam : {-1, 1}) {
        for (double t : {0.1, 0.8, 1.6, 2.5, 3.0}) {
          CAPTURE(j);
          CAPTURE(m);
          CAPTURE(lam);
          CHECK(wigner_d(j, m, lam, t) == doctest::Approx(wigner_sum(j, lam, m, t)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("wigner_d rows are unit vectors") {
  for (int j = 1; j <= 5; ++j) {
    for (double t : {0.3, 1.1, 2.7}) {
      double sum = 0.0;
      for (int m = -j; m <= j; ++m) {
        sum += std::pow(wigner_d(j, m, 1, t), 2);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(wigner_d(1, 2, 1, 0.5), DomainError);
}

TEST_CASE("legendre_harmonic is proportional to the associated Legendre function") {
  for (int j = 0; j <= 5; ++j) {
    for (int mu = 0; mu <= std::min(j, 2); ++mu) {
      const double t0 = 0.37;
      const double ratio = legendre_harmonic(j, mu, t0) / boost::math::legendre_p(j, mu, std::cos(t0));
      for (double t : {0.2, 1.3, 2.2, 2.9}) {
        CHECK(legendre_harmonic(j, mu, t) == doctest::Approx(ratio * boost::math::legendre_p(j, mu, std::cos(t))).epsilon(1e-11));
      }
    }
  }
}
