#include "photon/spectra.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "photon/constants.hpp"
#include "photon/errors.hpp"

namespace photon {

namespace {

using OdeState = std::array<double, 2>;

void check_level(SpectralSystem system, int n, int j) {
  if (n < 0) {
    throw ForbiddenQuantumNumbers("radial level n must be nonnegative");
  }
  if (system == SpectralSystem::InfiniteMomentum) {
    if (j < 0) {
      throw ForbiddenQuantumNumbers("j must be nonnegative");
    }
  } else if (j < 1) {
    throw ForbiddenQuantumNumbers(
        "j = 0 is not allowed: the centrifugal term becomes attractive and no regular solution exists");
  }
}

// Effective centrifugal numerator of the radial equation.
double centrifugal(SpectralSystem system, int j) {
  const double jj = j * (j + 1.0);
  return system == SpectralSystem::InfiniteMomentum ? jj : jj - 1.0;
}

// Indicial exponent of the regular solution at the origin.
double indicial(SpectralSystem system, int j) {
  switch (system) {
  case SpectralSystem::SinglePhoton:
    return -0.5 + std::sqrt(j * j + j - 0.75);
  case SpectralSystem::Beam:
    return -1.0 + std::sqrt(j * (j + 1.0));
  case SpectralSystem::InfiniteMomentum:
    return j;
  }
  return 0.0;
}

// Fourth-order first and second derivatives.
struct Derivs {
  double v;
  double d1;
  double d2;
};

Derivs differentiate(const std::function<double(double)>& f, double x, double h) {
  const double fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
  return {f0, (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h), (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)};
}

// K = kappa^p u turns the radial equation into u'' + (d / kappa) u' + V u = 0.
struct ReducedEquation {
  SpectralSystem system;
  double p;
  double d;
  double gamma;

  double potential(double kappa) const {
    if (system == SpectralSystem::Beam) {
      return 2.0 * gamma * gamma / kappa - gamma * gamma;
    }
    return 2.0 * gamma - kappa * kappa;
  }

  void operator()(const OdeState& y, OdeState& dy, double kappa) const {
    dy[0] = y[1];
    dy[1] = -(d / kappa) * y[1] - potential(kappa) * y[0];
  }
};

// The full equation for K, integrated inward from the decaying tail.
struct FullEquation {
  SpectralSystem system;
  double centrifugal;
  double gamma;

  void operator()(const OdeState& y, OdeState& dy, double kappa) const {
    dy[0] = y[1];
    if (system == SpectralSystem::Beam) {
      dy[1] = -(3.0 / kappa) * y[1] +
              (centrifugal / (kappa * kappa) - 2.0 * gamma * gamma / kappa + gamma * gamma) * y[0];
    } else {
      dy[1] = -(2.0 / kappa) * y[1] + (centrifugal / (kappa * kappa) + kappa * kappa - 2.0 * gamma) * y[0];
    }
  }
};

template <class System>
void integrate(const System& sys, OdeState& y, double from, double to) {
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<OdeState>>(1e-13, 1e-13);
  const double dt = (to - from) * 1e-3;
  try {
    ode::integrate_adaptive(stepper, sys, y, from, to, dt);
  } catch (const std::exception& e) {
    throw IntegrationError(std::string("radial integration failed: ") + e.what());
  }
  if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
    throw IntegrationError("radial integration produced non-finite values");
  }
}

double matching_wronskian(SpectralSystem system, int j, double gamma) {
  const double p = indicial(system, j);
  const double l = centrifugal(system, j);
  const bool beam = system == SpectralSystem::Beam;
  const double d = beam ? 2.0 * p + 3.0 : 2.0 * p + 2.0;
  const ReducedEquation reduced{system, p, d, gamma};

  // Match near the minimum of the effective potential.
  const double match = beam ? std::max(std::sqrt(j * (j + 1.0)) / gamma, 0.5) : std::max(std::pow(l, 0.25), 0.75);

  // Regular start: u = 1 + c1 k + c2 k^2.
  const double k0 = 1e-4;
  double c1 = 0.0, c2 = 0.0;
  if (beam) {
    c1 = -2.0 * gamma * gamma / d;
    c2 = (gamma * gamma - 2.0 * gamma * gamma * c1) / (2.0 * (1.0 + d));
  } else {
    c2 = -2.0 * gamma / (2.0 * (1.0 + d));
  }
  OdeState out{1.0 + c1 * k0 + c2 * k0 * k0, c1 + 2.0 * c2 * k0};
  integrate(reduced, out, k0, match);
  const double kp = std::pow(match, p);
  const double k_out = kp * out[0];
  const double dk_out = p * kp / match * out[0] + kp * out[1];

  // Decaying start: K ~ k^{gamma - 3/2} exp(-k^2/2) or exp(-gamma k).
  const double far = beam ? match + 36.0 / gamma + 4.0 : std::sqrt(2.0 * gamma + 4.0) + 7.0;
  const double q = gamma - 1.5;
  const double slope = beam ? -gamma + q / far : -far + q / far;
  OdeState in{1e-200, 1e-200 * slope};
  // Rescale on the way in to stay in range.
  const FullEquation full{system, l, gamma};
  double pos = far;
  const int pieces = 8;
  for (int i = 1; i <= pieces; ++i) {
    const double next = far + (match - far) * i / pieces;
    integrate(full, in, pos, next);
    const double mag = std::max(std::abs(in[0]), std::abs(in[1]));
    in[0] /= mag;
    in[1] /= mag;
    pos = next;
  }
  const double norm_out = std::hypot(k_out, dk_out);
  return (k_out * in[1] - dk_out * in[0]) / norm_out;
}

} // namespace

std::string to_string(SpectralSystem s) {
  switch (s) {
  case SpectralSystem::SinglePhoton:
    return "single";
  case SpectralSystem::Beam:
    return "beam";
  case SpectralSystem::InfiniteMomentum:
    return "imf";
  }
  return "unknown";
}

SpectralSystem parse_system(const std::string& name) {
  if (name == "single" || name == "SinglePhoton") {
    return SpectralSystem::SinglePhoton;
  }
  if (name == "beam" || name == "Beam") {
    return SpectralSystem::Beam;
  }
  if (name == "imf" || name == "InfiniteMomentum") {
    return SpectralSystem::InfiniteMomentum;
  }
  throw DomainError("unknown system '" + name + "' (expected single, beam or imf)");
}

double gamma_spectrum(SpectralSystem system, int n, int j) {
  check_level(system, n, j);
  switch (system) {
  case SpectralSystem::SinglePhoton:
    return 2.0 * n + 1.0 + std::sqrt(j * j + j - 0.75);
  case SpectralSystem::Beam:
    return n + 0.5 + std::sqrt(j * (j + 1.0));
  case SpectralSystem::InfiniteMomentum:
    return 2.0 * n + j + 1.5;
  }
  return 0.0;
}

double RadialProfile::operator()(double kappa) const {
  if (system == SpectralSystem::Beam) {
    return std::pow(kappa, exponent) * std::exp(-gamma * kappa) * poly(2.0 * gamma * kappa);
  }
  return std::pow(kappa, exponent) * std::exp(-0.5 * kappa * kappa) * poly(kappa * kappa);
}

RadialProfile radial_solution(SpectralSystem system, int n, int j) {
  RadialProfile r;
  r.system = system;
  r.n = n;
  r.j = j;
  r.gamma = gamma_spectrum(system, n, j);
  r.exponent = indicial(system, j);
  double b = 0.0;
  switch (system) {
  case SpectralSystem::SinglePhoton:
    b = 1.0 + std::sqrt(j * j + j - 0.75); // nu
    break;
  case SpectralSystem::Beam:
    b = 1.0 + 2.0 * std::sqrt(j * (j + 1.0)); // mu
    break;
  case SpectralSystem::InfiniteMomentum:
    b = j + 1.5;
    break;
  }
  r.poly = kummer_polynomial(n, b);
  return r;
}

std::vector<double> default_residual_samples() { return {0.3, 0.6, 1.0, 1.5, 2.0, 2.5, 3.0}; }

double radial_residual(SpectralSystem system, const std::function<double(double)>& profile, double gamma, int j,
                       const std::vector<double>& kappas, double h) {
  if (!(h > 0.0)) {
    throw StepTooLargeError("radial_residual: step must be positive");
  }
  if (!(h < 0.5)) {
    throw StepTooLargeError("radial_residual: relative stencil reaches the origin; use h < 0.5");
  }
  const double l = centrifugal(system, j);
  double worst = 0.0;
  double scale = 0.0;
  for (double x : kappas) {
    if (!(x > 0.0)) {
      throw DomainError("radial_residual: samples must be positive");
    }
    const auto d = differentiate(profile, x, h * x);
    scale = std::max(scale, std::abs(d.v));
    double res = 0.0;
    if (system == SpectralSystem::Beam) {
      res = -d.d2 - 3.0 / x * d.d1 + l / (x * x) * d.v - 2.0 * gamma * gamma / x * d.v + gamma * gamma * d.v;
    } else {
      res = -d.d2 - 2.0 / x * d.d1 + l / (x * x) * d.v + x * x * d.v - 2.0 * gamma * d.v;
    }
    worst = std::max(worst, std::abs(res));
  }
  return scale > 0.0 ? worst / scale : worst;
}

double shoot_eigenvalue(SpectralSystem system, int j, int n, std::optional<std::pair<double, double>> bracket) {
  check_level(system, n, j);
  const double guess = gamma_spectrum(system, n, j);
  const auto [lo, hi] = bracket.value_or(std::make_pair(guess - 0.5, guess + 0.5));
  if (!(lo < hi) || !(lo > 0.0)) {
    throw DomainError("shoot_eigenvalue: bracket must satisfy 0 < lo < hi");
  }
  auto w = [&](double g) { return matching_wronskian(system, j, g); };
  const double wlo = w(lo);
  const double whi = w(hi);
  if (wlo == 0.0) {
    return lo;
  }
  if (whi == 0.0) {
    return hi;
  }
  if ((wlo > 0.0) == (whi > 0.0)) {
    throw NoSignChangeError("shoot_eigenvalue: matching function has no sign change in the bracket");
  }
  boost::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(w, lo, hi, wlo, whi,
                                                      boost::math::tools::eps_tolerance<double>(45), iters);
  return 0.5 * (root.first + root.second);
}

double angular_residual(int j, int m, int lambda, SpectralSystem system) {
  if (lambda != 1 && lambda != -1) {
    throw ForbiddenQuantumNumbers("helicity must be +1 or -1");
  }
  std::function<double(double)> theta_fn;
  std::function<double(double, double)> potential;
  if (system == SpectralSystem::InfiniteMomentum) {
    const int mu = std::abs(m - lambda);
    if (j < 0 || mu > j) {
      throw ForbiddenQuantumNumbers("imf angular equation needs |m - lambda| <= j");
    }
    theta_fn = [=](double t) { return legendre_harmonic(j, mu, t); };
    potential = [=](double, double s) { return static_cast<double>(mu * mu) / (s * s); };
  } else {
    if (j < 1 || std::abs(m) > j) {
      throw ForbiddenQuantumNumbers("angular equation needs j >= 1 and |m| <= j");
    }
    theta_fn = [=](double t) { return wigner_d(j, m, lambda, t); };
    potential = [=](double c, double s) { return (m * m + lambda * lambda - 2.0 * lambda * m * c) / (s * s); };
  }
  const double eig = j * (j + 1.0);
  const double h = 1e-3;
  double worst = 0.0;
  const int nodes = 64;
  for (int i = 0; i < nodes; ++i) {
    const double t = 0.05 + (kPi - 0.1) * (i + 0.5) / nodes;
    const auto d = differentiate(theta_fn, t, h);
    const double c = std::cos(t), s = std::sin(t);
    const double res = -d.d2 - (c / s) * d.d1 + potential(c, s) * d.v - eig * d.v;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

std::vector<SpectrumLevel> spectrum_table(SpectralSystem system, int n_max, int j_max) {
  if (n_max < 0 || j_max < 0) {
    throw ForbiddenQuantumNumbers("n_max and j_max must be nonnegative");
  }
  const int j_min = system == SpectralSystem::InfiniteMomentum ? 0 : 1;
  if (j_max < j_min) {
    throw ForbiddenQuantumNumbers("no allowed j up to j_max for this system (s states are excluded)");
  }
  std::vector<SpectrumLevel> rows;
  for (int n = 0; n <= n_max; ++n) {
    for (int j = j_min; j <= j_max; ++j) {
      SpectrumLevel lvl;
      lvl.system = system;
      lvl.n = n;
      lvl.j = j;
      lvl.m = 1;
      lvl.lambda = 1;
      lvl.gamma = gamma_spectrum(system, n, j);
      lvl.exponent = indicial(system, j);
      rows.push_back(lvl);
    }
  }
  return rows;
}

} // namespace photon
