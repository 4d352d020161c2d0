#include "photon/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photon/errors.hpp"

namespace photon {

namespace {

constexpr double kIntegerTol = 1e-12;

bool is_nonpositive_integer(double v) {
  const double r = std::round(v);
  return r <= 0.0 && std::abs(v - r) < kIntegerTol;
}

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // Split the power to stay finite up to the double range.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * acc;
}

double lfactorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

} // namespace

double PolynomialCoeffs::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

double PolynomialCoeffs::derivative(double x) const {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 1;) {
    acc = acc * x + static_cast<double>(i) * coefficients[i];
  }
  return acc;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
  }
  if (x > 171.6) {
    throw std::overflow_error("gamma_fn: result overflows for x = " + std::to_string(x));
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

PolynomialCoeffs kummer_polynomial(int n, double b) {
  if (n < 0) {
    throw DomainError("kummer_polynomial: degree must be nonnegative");
  }
  if (is_nonpositive_integer(b)) {
    throw DomainError("kummer_polynomial: b must not be a nonpositive integer");
  }
  PolynomialCoeffs p;
  p.coefficients.assign(static_cast<std::size_t>(n) + 1, 0.0);
  double c = 1.0;
  p.coefficients[0] = c;
  for (int k = 0; k < n; ++k) {
    c *= (static_cast<double>(k - n)) / ((b + k) * (k + 1.0));
    p.coefficients[static_cast<std::size_t>(k) + 1] = c;
  }
  return p;
}

double kummer_1f1(double a, double b, double x) {
  if (is_nonpositive_integer(b)) {
    throw DomainError("kummer_1f1: b must not be a nonpositive integer");
  }
  if (is_nonpositive_integer(a)) {
    return kummer_polynomial(static_cast<int>(-std::round(a)), b)(x);
  }
  if (x < 0.0) {
    throw DomainError("kummer_1f1: non-terminating series requires x >= 0");
  }
  long double sum = 1.0L;
  long double term = 1.0L;
  const long double eps = std::numeric_limits<long double>::epsilon();
  int small_run = 0;
  for (int k = 0; k < 100000; ++k) {
    term *= (static_cast<long double>(a) + k) * x /
            ((static_cast<long double>(b) + k) * (k + 1.0L));
    sum += term;
    if (!std::isfinite(static_cast<double>(sum))) {
      throw std::overflow_error("kummer_1f1: series overflows for x = " + std::to_string(x));
    }
    // Terms can be transiently small when a + k crosses zero; require a run.
    if (std::abs(term) <= eps * std::abs(sum) && k > a + x) {
      if (++small_run >= 3) {
        break;
      }
    } else {
      small_run = 0;
    }
  }
  return static_cast<double>(sum);
}

double jacobi_p(int n, double alpha, double beta, double x) {
  if (n < 0) {
    throw DomainError("jacobi_p: degree must be nonnegative");
  }
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("jacobi_p: alpha and beta must exceed -1");
  }
  if (n == 0) {
    return 1.0;
  }
  double p_prev = 1.0;
  double p = 0.5 * ((alpha + beta + 2.0) * x + (alpha - beta));
  const double ab = alpha + beta;
  for (int k = 2; k <= n; ++k) {
    const double kk = k;
    const double c = 2.0 * kk + ab;
    const double a1 = 2.0 * kk * (kk + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * x + alpha * alpha - beta * beta);
    const double a3 = 2.0 * (kk + alpha - 1.0) * (kk + beta - 1.0) * c;
    const double next = (a2 * p - a3 * p_prev) / a1;
    p_prev = p;
    p = next;
  }
  return p;
}

double wigner_d(int j, int m, int lambda, double theta) {
  if (j < 0 || std::abs(m) > j || std::abs(lambda) > j) {
    throw DomainError("wigner_d: need j >= 0, |m| <= j, |lambda| <= j");
  }
  // d^j_{m' m} with m' = lambda (row) and m (column).
  const int mp = lambda;
  const int k = std::min({j + m, j - m, j + mp, j - mp});
  int a = 0;
  int phase = 0;
  if (k == j + m) {
    a = mp - m;
    phase = mp - m;
  } else if (k == j - m) {
    a = m - mp;
  } else if (k == j + mp) {
    a = m - mp;
  } else {
    a = mp - m;
    phase = mp - m;
  }
  const int b = 2 * j - 2 * k - a;
  // binom(2j - k, k + a)^{1/2} / binom(k + b, b)^{1/2}
  const double log_norm = 0.5 * (lfactorial(2 * j - k) - lfactorial(k + a) - lfactorial(2 * j - 2 * k - a)) -
                          0.5 * (lfactorial(k + b) - lfactorial(k) - lfactorial(b));
  const double sign = (phase % 2 == 0) ? 1.0 : -1.0;
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  return sign * std::exp(log_norm) * std::pow(s, a) * std::pow(c, b) *
         jacobi_p(k, a, b, std::cos(theta));
}

double legendre_harmonic(int j, int mu, double theta) {
  if (mu < 0 || j < mu) {
    throw DomainError("legendre_harmonic: need 0 <= mu <= j");
  }
  return std::pow(std::sin(theta), mu) * jacobi_p(j - mu, mu, mu, std::cos(theta));
}

} // namespace photon
