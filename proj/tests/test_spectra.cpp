#include <doctest.h>

#include <cmath>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/spectra.hpp"

using namespace photon;

TEST_CASE("closed-form ground levels") {
  CHECK(gamma_spectrum(SpectralSystem::SinglePhoton, 0, 1) == doctest::Approx(1.0 + std::sqrt(5.0) / 2.0));
  CHECK(gamma_spectrum(SpectralSystem::Beam, 0, 1) == doctest::Approx(0.5 + std::sqrt(2.0)));
  CHECK(gamma_spectrum(SpectralSystem::InfiniteMomentum, 0, 0) == doctest::Approx(1.5));
  CHECK(gamma_spectrum(SpectralSystem::SinglePhoton, 2, 3) == doctest::Approx(5.0 + std::sqrt(11.25)));
}

TEST_CASE("forbidden quantum numbers") {
  CHECK_THROWS_AS(gamma_spectrum(SpectralSystem::SinglePhoton, 0, 0), ForbiddenQuantumNumbers);
  CHECK_THROWS_AS(gamma_spectrum(SpectralSystem::Beam, 1, 0), ForbiddenQuantumNumbers);
  CHECK_THROWS_AS(gamma_spectrum(SpectralSystem::SinglePhoton, -1, 1), ForbiddenQuantumNumbers);
  CHECK_THROWS_AS(parse_system("bogus"), DomainError);
  CHECK(parse_system("imf") == SpectralSystem::InfiniteMomentum);
}

TEST_CASE("shooting reproduces the closed forms") {
  for (auto sys : {SpectralSystem::SinglePhoton, SpectralSystem::Beam, SpectralSystem::InfiniteMomentum}) {
    const int jmin = sys == SpectralSystem::InfiniteMomentum ? 0 : 1;
    for (int n = 0; n <= 3; ++n) {
      for (int j = jmin; j <= 3; ++j) {
        CAPTURE(to_string(sys));
        CAPTURE(n);
        CAPTURE(j);
        CHECK(shoot_eigenvalue(sys, j, n) == doctest::Approx(gamma_spectrum(sys, n, j)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("shooting without a sign change") {
  CHECK_THROWS_AS(shoot_eigenvalue(SpectralSystem::SinglePhoton, 1, 0, std::make_pair(2.3, 2.4)), NoSignChangeError);
}

TEST_CASE("radial eigenfunctions solve their equations") {
  const auto kappas = default_residual_samples();
  for (auto sys : {SpectralSystem::SinglePhoton, SpectralSystem::Beam, SpectralSystem::InfiniteMomentum}) {
    const int jmin = sys == SpectralSystem::InfiniteMomentum ? 0 : 1;
    for (int n = 0; n <= 3; ++n) {
      for (int j = jmin; j <= 3; ++j) {
        const RadialProfile p = radial_solution(sys, n, j);
        CAPTURE(to_string(sys));
        CAPTURE(n);
        CAPTURE(j);
        CHECK(radial_residual(sys, p, p.gamma, j, kappas) <= 1e-6);
        CHECK(radial_residual(sys, p, p.gamma + 0.1, j, kappas) > 1e-2);
      }
    }
  }
  const RadialProfile p = radial_solution(SpectralSystem::SinglePhoton, 0, 1);
  CHECK_THROWS_AS(radial_residual(SpectralSystem::SinglePhoton, p, p.gamma, 1, kappas, 0.7), StepTooLargeError);
}

TEST_CASE("radial profile has n nodes") {
  for (int n = 0; n <= 3; ++n) {
    const RadialProfile p = radial_solution(SpectralSystem::SinglePhoton, n, 1);
    int changes = 0;
    double prev = p(0.01);
    for (double k = 0.02; k < 8.0; k += 0.01) {
      const double v = p(k);
      if (v * prev < 0.0) ++changes;
      prev = v;
    }
    CHECK(changes == n);
  }
}

TEST_CASE("angular eigenfunctions") {
  for (auto sys : {SpectralSystem::SinglePhoton, SpectralSystem::Beam}) {
    for (int j = 1; j <= 3; ++j) {
      for (int m = -j; m <= j; ++m) {
        CHECK(angular_residual(j, m, 1, sys) <= 1e-6);
      }
    }
  }
  for (int j = 0; j <= 3; ++j) {
    CHECK(angular_residual(j, 1, 1, SpectralSystem::InfiniteMomentum) <= 1e-6);
  }
}

TEST_CASE("spectrum table") {
  const auto rows = spectrum_table(SpectralSystem::SinglePhoton, 1, 2);
  CHECK(rows.size() == 4);
  CHECK(spectrum_table(SpectralSystem::InfiniteMomentum, 0, 0).size() == 1);
}
