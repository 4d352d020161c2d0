#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"
#include "photon/state_io.hpp"
#include "photon/states.hpp"

using namespace photon;

namespace {

// Gamma by direct quadrature of its Euler integral, independent of gamma_fn.
double euler_gamma(double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); }, 0.0,
                              std::numeric_limits<double>::infinity());
}

} // namespace

TEST_CASE("closed-form normalizations against Euler integrals") {
  const double pi = boost::math::constants::pi<double>();
  CHECK(saturator_single_norm() == doctest::Approx(std::sqrt(3.0 / (4.0 * pi * euler_gamma(kGammaSingle)))).epsilon(1e-12));
  const double beam = std::pow(2.0 * kGammaBeam, std::sqrt(2.0)) * std::sqrt(3.0 / (8.0 * pi * euler_gamma(2.0 * std::sqrt(2.0))));
  CHECK(saturator_beam_norm() == doctest::Approx(beam).epsilon(1e-12));
}

TEST_CASE("saturators and levels are normalized") {
  for (int m : {-1, 0, 1}) {
    for (int n : {0, 1, 2}) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(expectation_report(saturator_single(m, 1.0, n)).norm == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(expectation_report(saturator_beam(m, 1.0, n)).norm == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(expectation_report(saturator_single(1, 2.5)).norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation_report(gaussian_1d(0.7)).norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("different radial levels are orthogonal") {
  const PhotonState a = saturator_single(1, 1.0, 0), b = saturator_single(1, 1.0, 1);
  const PhotonState sum = superpose({{1.0, a}, {1.0, b}});
  CHECK(expectation_report(sum).norm == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("constructor domain checks") {
  CHECK_THROWS_AS(saturator_single(2), DomainError);
  CHECK_THROWS_AS(saturator_single(1, -1.0), DomainError);
  CHECK_THROWS_AS(saturator_single(1, 1.0, -1), DomainError);
  CHECK_THROWS_AS(saturator_single(1, 1.0, 0, 0), DomainError);
  CHECK_THROWS_AS(gaussian_1d(0.0), DomainError);
  CHECK_THROWS_AS(trial_state(1, std::vector<double>(7, 0.1), 1.0, true), DomainError);
}

TEST_CASE("vector field projects onto the three saturators") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kr(0.2, 3.0), th(0.1, 3.0), ph(0.0, 6.28);
  for (int i = 0; i < 25; ++i) {
    const auto k = MomentumPoint::from_spherical(kr(rng), th(rng), ph(rng));
    const auto proj = project_vector_field(saturator_vector_field(k));
    for (int m : {-1, 0, 1}) {
      const cd f = saturator_single(m).evaluate(k);
      CHECK(std::abs(proj[m + 1] - f) < 1e-12 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("grid resampling reproduces the closed-form report") {
  const PhotonState exact = saturator_single(1);
  const PhotonState grid = grid_state(sample_to_grid(exact, 7.0, 129, 97, 64));
  const auto a = expectation_report(exact);
  const auto b = expectation_report(grid);
  CHECK(b.norm == doctest::Approx(a.norm).epsilon(1e-3));
  CHECK(b.gamma2 == doctest::Approx(a.gamma2).epsilon(1e-3));
  CHECK(b.mean_P.z() == doctest::Approx(a.mean_P.z()).epsilon(1e-3));
}

TEST_CASE("grid lookups outside the support") {
  const PhotonState grid = grid_state(sample_to_grid(saturator_single(0), 5.0, 17, 9, 8));
  CHECK_THROWS_AS(grid.sample(6.0, 1.0, 0.0), OutOfGridError);
  SampledGrid tiny;
  tiny.kmax = 1.0;
  tiny.nk = tiny.ntheta = tiny.nphi = 3;
  tiny.values.assign(27, 0.0);
  CHECK_THROWS_AS(grid_state(tiny), StateFormatError);
}

TEST_CASE("superpose is linear") {
  const PhotonState s = saturator_single(1);
  const auto scaled = expectation_report(superpose({{cd(0.0, 2.0), s}}));
  CHECK(scaled.norm == doctest::Approx(4.0));
  CHECK(scaled.gamma2 == doctest::Approx(expectation_report(s).gamma2).epsilon(1e-12));
  const auto mix = expectation_report(superpose({{1.0, saturator_single(1)}, {1.0, saturator_single(-1)}}));
  CHECK(mix.norm == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(superpose({}), DomainError);
  CHECK_THROWS_AS(superpose({{1.0, saturator_single(1)}, {1.0, saturator_single(1, 1.0, 0, -1)}}), DomainError);
}

TEST_CASE("state descriptions round trip") {
  for (const PhotonState& st : {saturator_single(-1, 1.5), saturator_beam(0, 0.5, 1), trial_state(1, {0.2, 0.3}),
                                gaussian_1d(2.0, 1.0, -1)}) {
    const PhotonState back = state_from_json(state_to_json(st));
    CHECK(back.family() == st.family());
    CHECK(back.scale() == st.scale());
    CHECK(back.helicity() == st.helicity());
    const auto k = MomentumPoint::from_spherical(1.1, 0.8, 0.4);
    CHECK(std::abs(back.evaluate(k) - st.evaluate(k)) < 1e-15);
  }
  const PhotonState g = grid_state(sample_to_grid(saturator_single(0), 5.0, 9, 9, 8));
  const PhotonState g2 = state_from_json(state_to_json(g));
  const auto k = MomentumPoint::from_spherical(1.1, 0.8, 0.4);
  CHECK(std::abs(g2.evaluate(k) - g.evaluate(k)) < 1e-15);
}

TEST_CASE("malformed state descriptions") {
  using nlohmann::json;
  CHECK_THROWS_AS(state_from_json(json::array()), StateFormatError);
  CHECK_THROWS_AS(state_from_json(json{{"m", 1}}), StateFormatError);
  CHECK_THROWS_AS(state_from_json(json{{"family", "nonsense"}}), StateFormatError);
  CHECK_THROWS_AS(state_from_json(json{{"family", "saturator-single"}}), StateFormatError);
  CHECK_THROWS_AS(state_from_json(json{{"family", "saturator-single"}, {"m", "one"}}), StateFormatError);
  CHECK_THROWS_AS(state_from_json(json{{"family", "grid"}}), StateFormatError);
  CHECK_THROWS_AS(load_state("/nonexistent/state.json"), StateFormatError);
}
