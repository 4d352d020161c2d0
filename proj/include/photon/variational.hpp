#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "photon/quadrature.hpp"
#include "photon/states.hpp"

namespace photon {

struct OptimizerSettings {
  int restarts = 5;
  double tolerance = 1e-9;
  int max_evaluations = 20000;
  double simplex_scale = 0.3;
  /// One seed per restart; the first restart starts at the warm point itself.
  std::vector<std::uint64_t> seeds{11, 23, 37, 41, 53};
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Plain Nelder-Mead with an axis-aligned initial simplex of size `scale`.
/// Converged when the largest vertex distance from the best vertex drops
/// below `tolerance`.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             double scale, double tolerance, int max_evaluations);

/// Best of `settings.restarts` Nelder-Mead runs from x0 and seeded jitters of it.
NelderMeadResult minimize_with_restarts(const std::function<double(const std::vector<double>&)>& f,
                                        const std::vector<double>& x0, const OptimizerSettings& settings);

/// Quadratic forms of the trial family f_+ (1 + a_1 u + ... + a_q u^q),
/// u = a k cos(theta), precomputed on a quadrature so that evaluating the
/// variance product for a coefficient vector costs only small matrix products.
class TrialFamily {
public:
  struct Moments {
    double norm;
    double RR;
    double PP;
    double Pz;
  };

  explicit TrialFamily(int max_order = 6, QuadratureOrders orders = {32, 24, 8});

  int max_order() const { return max_order_; }
  Moments moments(const std::vector<double>& coeffs) const;
  /// (RR / norm) * (PP / norm - (Pz / norm)^2); the mean position vanishes.
  double variance_product(const std::vector<double>& coeffs) const;
  double mean_P2(const std::vector<double>& coeffs) const;

private:
  int max_order_;
  Eigen::MatrixXd norm_, rr_, pp_, pz_;
};

struct VariationalRun {
  int order = 0;
  std::vector<double> coefficients;
  double mean_P2 = 0.0;
  double variance_product = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the variance product over trial_state(+1, a_1..a_q).
/// `warm` (size <= q) seeds the first restart; missing coefficients are 0.
VariationalRun minimize_variance_product(int order, const TrialFamily& family, const OptimizerSettings& settings = {},
                                         const std::vector<double>& warm = {});

/// Runs orders 0..max(orders) in sequence, each warm-started from the
/// previous optimum (so the values cannot increase), and returns the
/// requested orders.
std::vector<VariationalRun> figure1_sweep(const std::vector<int>& orders, const TrialFamily& family,
                                          const OptimizerSettings& settings = {});

/// 9/4 + sqrt5 / (1 + 1.14 p2 + 0.8 p2^2).
double fit_eval(double p2);

/// Exact left endpoint of the sweep: (0, 9/4 + sqrt5).
double exact_endpoint();

/// Trial state of the infinite-momentum study (a = 1):
///   g = k^power exp(-k^2 / (2 width^2)) (1 + cos theta') / 2 e^{i lambda phi},
/// theta' the polar angle of k + shift n. With `limit` the angular factor is 1
/// (the shift -> infinity form).
PhotonState imf_trial_state(double power, double width, double shift, bool limit = false, int helicity = 1);

struct ImfPoint {
  double shift = 0.0;
  double gamma2 = 0.0;
  double power = 0.0;
  double width = 0.0;
  bool converged = false;
};

struct ImfResult {
  std::vector<ImfPoint> series;
  /// Aitken extrapolation of the last three points (last value if degenerate).
  double extrapolated = 0.0;
  /// Minimum with the limiting connection (n x k)/|n x k|^2.
  ImfPoint limit;
};

/// Minimizes the shifted functional over the power at each shift, with the
/// width pinned to 1 (shifts are in units of 1/a).
ImfResult imf_limit(const std::vector<double>& shifts, const OptimizerSettings& settings = {},
                    QuadratureOrders orders = {32, 48, 4});

/// Minimum of the functional with the limiting connection (scale invariant,
/// so only the power is varied).
ImfPoint imf_exact_minimum(const OptimizerSettings& settings = {}, QuadratureOrders orders = {32, 48, 4});

} // namespace photon
