#pragma once

#include <vector>

namespace photon {

/// Real polynomial, coefficients in ascending degree.
struct PolynomialCoeffs {
  std::vector<double> coefficients{1.0};

  double operator()(double x) const;
  double derivative(double x) const;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Gamma function for x > 0 (Lanczos, g = 7, nine coefficients).
double gamma_fn(double x);

/// Confluent hypergeometric function 1F1(a; b; x).
///
/// A nonpositive-integer `a` (to within 1e-12) gives the terminating
/// polynomial, which is evaluated exactly for any real x. Otherwise the power
/// series is summed for x >= 0. Throws DomainError when b is a nonpositive
/// integer or for non-terminating series at x < 0, std::overflow_error when
/// the result does not fit in a double.
double kummer_1f1(double a, double b, double x);

/// Coefficients of the terminating series 1F1(-n; b; x), ascending in x.
PolynomialCoeffs kummer_polynomial(int n, double b);

/// Jacobi polynomial P_n^{(alpha, beta)}(x) by the three-term recurrence.
double jacobi_p(int n, double alpha, double beta, double x);

/// Wigner small-d function d^j_{lambda m}(theta).
///
/// Solves the monopole-harmonic angular equation
///   [-(1/sin) d/dtheta sin d/dtheta + (m^2 + lambda^2 - 2 lambda m cos)/sin^2] T = j(j+1) T
/// with d^j_{lambda lambda}(0) = 1. Built from the half-angle Jacobi form.
double wigner_d(int j, int m, int lambda, double theta);

/// Associated Legendre-type solution of the infinite-momentum angular equation
///   [-(1/sin) d/dtheta sin d/dtheta + mu^2/sin^2] T = j(j+1) T,  mu = |m - lambda|,
/// as sin^mu(theta) P_{j-mu}^{(mu, mu)}(cos theta) (unnormalized).
double legendre_harmonic(int j, int mu, double theta);

} // namespace photon
