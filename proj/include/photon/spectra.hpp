#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "photon/specfun.hpp"

namespace photon {

/// Which variational eigenproblem: the single photon, the coherent beam, or
/// the single photon with the infinite-momentum connection.
enum class SpectralSystem { SinglePhoton, Beam, InfiniteMomentum };

std::string to_string(SpectralSystem s);
/// Accepts "single", "beam", "imf" (and the enum names); throws DomainError.
SpectralSystem parse_system(const std::string& name);

/// Closed-form eigenvalue gamma of level (n, j).
///   single: 2n + 1 + sqrt(j^2 + j - 3/4)
///   beam:   n + 1/2 + sqrt(j (j + 1))
///   imf:    2n + j + 3/2
/// Throws ForbiddenQuantumNumbers for j < 1 (single, beam) or j < 0, n < 0.
double gamma_spectrum(SpectralSystem system, int n, int j);

/// Regular radial eigenfunction
///   K(kappa) = kappa^exponent exp(-decay(kappa)) poly(x),
/// with decay kappa^2/2 and x = kappa^2 for the oscillator-like systems, and
/// decay gamma kappa and x = 2 gamma kappa for the beam.
struct RadialProfile {
  SpectralSystem system = SpectralSystem::SinglePhoton;
  int n = 0;
  int j = 1;
  double gamma = 0.0;
  double exponent = 0.0;
  PolynomialCoeffs poly;

  double operator()(double kappa) const;
};

RadialProfile radial_solution(SpectralSystem system, int n, int j);

/// Interior sample points used by default for residual checks.
std::vector<double> default_residual_samples();

/// Max over `kappas` of |L K - eigenvalue term|, relative to the largest
/// |K| among the samples. The radial operator is applied by fourth-order
/// central differences with step h * kappa:
///   single: -(1/k^2)(k^2 K')' + (j(j+1) - 1) K / k^2 + k^2 K - 2 gamma K
///   imf:    -(1/k^2)(k^2 K')' + j(j+1) K / k^2 + k^2 K - 2 gamma K
///   beam:   -(1/k^3)(k^3 K')' + (j(j+1) - 1) K / k^2 - 2 gamma^2 K / k + gamma^2 K
/// Throws StepTooLargeError unless 0 < h < 0.5.
double radial_residual(SpectralSystem system, const std::function<double(double)>& profile, double gamma, int j,
                       const std::vector<double>& kappas, double h = 2e-3);

/// Eigenvalue by shooting: regular series start near the origin, decaying
/// start far out, adaptive Runge-Kutta both ways, root of the matching
/// Wronskian in `bracket` (default: closed form +- 0.5). Throws
/// NoSignChangeError, IntegrationError.
double shoot_eigenvalue(SpectralSystem system, int j, int n,
                        std::optional<std::pair<double, double>> bracket = std::nullopt);

/// Max residual of the angular equation on 64 interior nodes. For single and
/// beam the operator is the monopole one applied to wigner_d(j, m, lambda);
/// for imf it has (m - lambda)^2 / sin^2 and acts on legendre_harmonic.
double angular_residual(int j, int m, int lambda, SpectralSystem system);

/// One row of the spectrum table.
struct SpectrumLevel {
  SpectralSystem system = SpectralSystem::SinglePhoton;
  int n = 0;
  int j = 1;
  int m = 0;
  int lambda = 1;
  double gamma = 0.0;
  double exponent = 0.0;
};

/// Levels with n <= n_max and allowed j <= j_max (m = lambda = 1).
std::vector<SpectrumLevel> spectrum_table(SpectralSystem system, int n_max, int j_max);

} // namespace photon
