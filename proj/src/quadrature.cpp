#include "photon/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/states.hpp"

namespace photon {

namespace {

using mp = boost::multiprecision::cpp_bin_float_100;

struct Recurrence {
  std::vector<mp> alpha;
  std::vector<mp> beta; // beta[0] = total mass of the weight
};

// Chebyshev algorithm: recurrence coefficients from the ordinary moments.
// The map is ill-conditioned, hence the 100-digit arithmetic.
Recurrence chebyshev(const std::vector<mp>& mom, int n) {
  Recurrence r;
  r.alpha.resize(n);
  r.beta.resize(n);
  const int len = 2 * n;
  std::vector<mp> prev(len, mp(0)), cur(mom.begin(), mom.begin() + len);
  r.alpha[0] = mom[1] / mom[0];
  r.beta[0] = mom[0];
  for (int k = 1; k < n; ++k) {
    std::vector<mp> next(len, mp(0));
    for (int l = k; l < len - k; ++l) {
      next[l] = cur[l + 1] - r.alpha[k - 1] * cur[l] - r.beta[k - 1] * prev[l];
    }
    r.alpha[k] = next[k + 1] / next[k] - cur[k] / cur[k - 1];
    r.beta[k] = next[k] / cur[k - 1];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return r;
}

// Nodes from the Jacobi matrix in double precision, polished by Newton steps
// on the monic recurrence, weights from the Christoffel function.
void gauss_from_recurrence(const Recurrence& r, std::vector<mp>& nodes, std::vector<mp>& weights) {
  const int n = static_cast<int>(r.alpha.size());
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) {
    diag(i) = static_cast<double>(r.alpha[i]);
    if (i + 1 < n) {
      sub(i) = std::sqrt(static_cast<double>(r.beta[i + 1]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    mp x = eig.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      mp p0 = 1, p1 = x - r.alpha[0], d0 = 0, d1 = 1;
      for (int k = 1; k < n; ++k) {
        const mp p2 = (x - r.alpha[k]) * p1 - r.beta[k] * p0;
        const mp d2 = p1 + (x - r.alpha[k]) * d1 - r.beta[k] * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
      }
      const mp step = p1 / d1;
      x -= step;
      if (abs(step) < mp(1e-60) * (1 + abs(x))) {
        break;
      }
    }
    nodes[i] = x;
    mp q0 = 0, q1 = 1 / sqrt(r.beta[0]);
    mp sum = q1 * q1;
    for (int k = 0; k + 1 < n; ++k) {
      const mp q2 = ((x - r.alpha[k]) * q1 - sqrt(r.beta[k]) * q0) / sqrt(r.beta[k + 1]);
      sum += q2 * q2;
      q0 = q1;
      q1 = q2;
    }
    weights[i] = 1 / sum;
  }
}

RadialRule compute_rule(RadialWeight family, int n, double power) {
  RadialRule rule;
  rule.family = family;
  rule.power = power;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (family == RadialWeight::GenericMapped) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    for (int i = 0; i < n; ++i) {
      rule.nodes[i] = 0.5 * (x[i] + 1.0);
      rule.weights[i] = 0.5 * w[i];
    }
    return rule;
  }
  const mp s = power;
  Recurrence rec;
  if (family == RadialWeight::Exponential) {
    rec.alpha.resize(n);
    rec.beta.resize(n);
    for (int k = 0; k < n; ++k) {
      rec.alpha[k] = 2 * k + s + 1;
      rec.beta[k] = k == 0 ? boost::math::tgamma(s + 1) : mp(k) * (k + s);
    }
  } else {
    std::vector<mp> mom(2 * n);
    for (int j = 0; j < 2 * n; ++j) {
      mom[j] = boost::math::tgamma((s + j + 1) / 2) / 2;
    }
    rec = chebyshev(mom, n);
  }
  std::vector<mp> x, w;
  gauss_from_recurrence(rec, x, w);
  for (int i = 0; i < n; ++i) {
    const mp weight_fn = family == RadialWeight::Exponential ? pow(x[i], s) * exp(-x[i])
                                                             : pow(x[i], s) * exp(-x[i] * x[i]);
    rule.nodes[i] = static_cast<double>(x[i]);
    rule.weights[i] = static_cast<double>(w[i] / weight_fn);
  }
  return rule;
}

} // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) {
    throw DomainError("gauss_legendre: order must be positive");
  }
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
}

RadialRule radial_rule(RadialWeight family, int n, double power) {
  if (n < 1 || n > 200) {
    throw DomainError("radial_rule: order must lie in [1, 200]");
  }
  if (family != RadialWeight::GenericMapped && !(power > -1.0)) {
    throw DomainError("radial_rule: weight power must exceed -1");
  }
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, RadialRule> cache;
  const auto key = std::make_tuple(static_cast<int>(family), n, power);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      return it->second;
    }
  }
  RadialRule rule = compute_rule(family, n, power);
  std::lock_guard<std::mutex> lock(mutex);
  if (cache.size() > 512) {
    cache.clear();
  }
  cache.emplace(key, rule);
  return rule;
}

QuadratureScheme build_quadrature(RadialWeight family, int nk, int ntheta, int nphi, int measure_exponent,
                                  double power) {
  if (nk < 4 || ntheta < 4 || nphi < 4) {
    throw DomainError("build_quadrature: orders must be at least 4");
  }
  QuadratureScheme q;
  q.radial = radial_rule(family, nk, power);
  gauss_legendre(ntheta, q.cos_theta, q.theta_weights);
  q.phi.resize(nphi);
  for (int l = 0; l < nphi; ++l) {
    q.phi[l] = 2.0 * kPi * l / nphi;
  }
  q.phi_weight = 2.0 * kPi / nphi;
  q.measure_exponent = measure_exponent;
  return q;
}

double integrate_radial(const QuadratureScheme& scheme, const std::function<double(double)>& f) {
  CompensatedSum acc;
  for (int i = 0; i < scheme.nk(); ++i) {
    const double x = scheme.radial.nodes[i];
    acc.add(scheme.radial.weights[i] * std::pow(x, scheme.measure_exponent) * f(x));
  }
  return acc.value();
}

double integrate_solid_angle(const QuadratureScheme& scheme, const std::function<double(double, double)>& f) {
  CompensatedSum acc;
  for (int j = 0; j < scheme.ntheta(); ++j) {
    const double theta = std::acos(scheme.cos_theta[j]);
    for (double phi : scheme.phi) {
      acc.add(scheme.theta_weights[j] * scheme.phi_weight * f(theta, phi));
    }
  }
  return acc.value();
}

QuadratureScheme default_scheme(const PhotonState& state, QuadratureOrders orders) {
  const RadialHint hint = state.radial_hint();
  const double a = state.scale();
  if (const auto* g = std::get_if<PhotonState::Gaussian1D>(&state.details())) {
    // Anisotropic Gaussians concentrate near the poles or the equator.
    const double aspect = std::max(g->width / a, a / g->width);
    orders.ntheta = std::clamp(static_cast<int>(std::ceil(48.0 * aspect)), orders.ntheta, 400);
  }
  switch (hint.decay) {
  case RadialHint::Decay::Gaussian: {
    auto q = build_quadrature(RadialWeight::GaussLike, orders.nk, orders.ntheta, orders.nphi, 0,
                              std::max(2.0 * hint.power - 1.0, -0.5));
    q.radial_scale = 1.0 / (hint.rate * a);
    return q;
  }
  case RadialHint::Decay::Exponential: {
    auto q = build_quadrature(RadialWeight::Exponential, orders.nk, orders.ntheta, orders.nphi, 0,
                              std::max(2.0 * hint.power - 1.0, -0.5));
    q.radial_scale = 1.0 / (hint.rate * a);
    return q;
  }
  case RadialHint::Decay::Compact:
    break;
  }
  auto q = build_quadrature(RadialWeight::GenericMapped, orders.nk, orders.ntheta, orders.nphi, 0);
  q.radial_scale = hint.kmax;
  return q;
}

} // namespace photon
