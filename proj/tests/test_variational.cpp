#include <doctest.h>

#include <cmath>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"
#include "photon/variational.hpp"

using namespace photon;

TEST_CASE("nelder-mead finds the Rosenbrock minimum") {
  auto rosen = [](const std::vector<double>& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, 0.3, 1e-10, 20000);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("restarts are deterministic") {
  auto bowl = [](const std::vector<double>& x) { return std::pow(x[0] - 0.3, 2) + 2.0 * std::pow(x[1] + 0.7, 2); };
  const auto a = minimize_with_restarts(bowl, {0.0, 0.0}, {});
  const auto b = minimize_with_restarts(bowl, {0.0, 0.0}, {});
  CHECK(a.x == b.x);
  CHECK(a.value < 1e-15);
  OptimizerSettings bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(minimize_with_restarts(bowl, {0.0, 0.0}, bad), DomainError);
}

TEST_CASE("fit curve values") {
  CHECK(fit_eval(0.0) == doctest::Approx(2.25 + std::sqrt(5.0)));
  CHECK(fit_eval(1.0) == doctest::Approx(2.25 + std::sqrt(5.0) / 2.94));
  CHECK(fit_eval(1e12) == doctest::Approx(2.25));
  CHECK(fit_eval(INFINITY) == 2.25);
  CHECK_THROWS_AS(fit_eval(-1.0), DomainError);
  CHECK(exact_endpoint() == doctest::Approx(4.48606797749979));
}

TEST_CASE("trial family forms agree with direct quadrature") {
  const TrialFamily family(3);
  for (const std::vector<double>& c : {std::vector<double>{}, {0.3}, {0.5, 0.1}, {-0.4, 0.2, 0.05}}) {
    const auto st = trial_state(1, c);
    const auto r = expectation_report(st, default_scheme(st, {48, 48, 8}));
    CHECK(family.variance_product(c) == doctest::Approx(r.variance_product).epsilon(1e-9));
    CHECK(family.mean_P2(c) == doctest::Approx(std::pow(r.mean_P.z(), 2)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(family.moments({1, 2, 3, 4}), DomainError);
}

TEST_CASE("order zero is the plain saturator") {
  const TrialFamily family(1);
  const auto run = minimize_variance_product(0, family);
  const double mp = expectation_report(saturator_single(1)).mean_P.z();
  CHECK(run.variance_product == doctest::Approx(kGammaSingle * kGammaSingle - kGammaSingle * mp * mp).epsilon(1e-10));
  CHECK(run.mean_P2 == doctest::Approx(mp * mp).epsilon(1e-10));
  CHECK(run.variance_product == doctest::Approx(3.4884).epsilon(1e-4));
}

TEST_CASE("figure sweep shape") {
  const TrialFamily family(6);
  const auto runs = figure1_sweep({0, 1, 2, 3, 4, 5, 6}, family);
  REQUIRE(runs.size() == 7);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(runs[i].converged);
    CHECK(runs[i].variance_product > 2.25);
    CHECK(runs[i].variance_product <= exact_endpoint());
    CHECK(std::abs(runs[i].variance_product - fit_eval(runs[i].mean_P2)) <= 0.15);
    if (i > 0) {
      CHECK(runs[i].variance_product <= runs[i - 1].variance_product + 1e-10);
      CHECK(runs[i].mean_P2 >= runs[i - 1].mean_P2);
    }
  }
  const auto again = figure1_sweep({6}, family);
  CHECK(again[0].variance_product == runs[6].variance_product);
}

TEST_CASE("imf trial state at zero shift is the saturator shape") {
  const auto st = imf_trial_state(kGammaSingle - 1.5, 1.0, 0.0);
  CHECK(expectation_report(st).gamma2 == doctest::Approx(kGammaSingle * kGammaSingle).epsilon(1e-9));
  CHECK_THROWS_AS(imf_trial_state(-0.1, 1.0, 0.0), DomainError);
}

TEST_CASE("infinite-momentum limit") {
  const auto res = imf_limit({0.0, 1.0, 2.0, 4.0, 8.0});
  CHECK(res.series.front().gamma2 == doctest::Approx(kGammaSingle * kGammaSingle).epsilon(1e-6));
  for (std::size_t i = 1; i < res.series.size(); ++i) {
    CHECK(res.series[i].gamma2 < res.series[i - 1].gamma2);
    CHECK(res.series[i].gamma2 > 2.25 - 1e-6);
  }
  CHECK(res.limit.gamma2 == doctest::Approx(2.25).epsilon(1e-4 / 2.25));
  CHECK(res.extrapolated == doctest::Approx(2.25).epsilon(0.02));
  CHECK_THROWS_AS(imf_limit({1.0, 0.5}), DomainError);
}
