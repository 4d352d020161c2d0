#include "photon/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "integrand.hpp"
#include "photon/constants.hpp"
#include "photon/errors.hpp"

namespace photon {

using detail::kI;

namespace {

struct VecSum {
  std::array<CompensatedSum, 3> c;
  void add(const Vec3& v) {
    for (int i = 0; i < 3; ++i) {
      c[i].add(v(i));
    }
  }
  Vec3 value() const { return {c[0].value(), c[1].value(), c[2].value()}; }
};

} // namespace

nlohmann::json to_json(const ExpectationReport& r) {
  return {{"norm", r.norm},
          {"mean_R", {r.mean_R.x(), r.mean_R.y(), r.mean_R.z()}},
          {"RR", r.RR},
          {"mean_P", {r.mean_P.x(), r.mean_P.y(), r.mean_P.z()}},
          {"PP", r.PP},
          {"varR", r.varR},
          {"varP", r.varP},
          {"gamma2", r.gamma2},
          {"variance_product", r.variance_product}};
}

ExpectationReport expectation_report(const PhotonState& state, const QuadratureScheme& scheme,
                                     const Connection& conn) {
  const int lam = state.helicity();
  CompensatedSum norm, rr, pp;
  VecSum mean_p, mean_r;
  detail::for_each_node(state, scheme, [&](const detail::Node& n) {
    const ModeSample g = detail::to_g(n.s, n.k);
    const auto d = detail::covariant_components(g, n.k, n.sin_t, lam, conn.azimuthal_factor(n.k, n.theta));
    const double w = n.weight * n.k * n.k;
    const double dens = std::norm(g.f);
    norm.add(w * dens);
    rr.add(w * d.norm2());
    pp.add(w * n.k * n.k * dens);
    mean_p.add(w * n.k * dens * detail::spherical_to_local(1.0, 0.0, 0.0, n.theta, n.phi));
    const cd gc = std::conj(g.f);
    mean_r.add(w * detail::spherical_to_local(std::real(kI * gc * d.r), std::real(kI * gc * d.t),
                                              std::real(kI * gc * d.p), n.theta, n.phi));
  });

  ExpectationReport r;
  r.scale = state.scale();
  r.norm = norm.value();
  if (!(r.norm > 0.0)) {
    throw DomainError("expectation_report: state has zero norm under the quadrature");
  }
  const AxisVector& axis = state.axis();
  r.mean_R = axis.to_lab(Vec3(mean_r.value() / r.norm));
  r.mean_P = axis.to_lab(Vec3(mean_p.value() / r.norm));
  r.RR = rr.value() / r.norm;
  r.PP = pp.value() / r.norm;
  r.varR = r.RR - r.mean_R.squaredNorm();
  r.varP = r.PP - r.mean_P.squaredNorm();
  r.gamma2 = r.RR * r.PP;
  r.variance_product = r.varR * r.varP;
  r.divergent = axis_divergence(state, conn);
  return r;
}

ExpectationReport expectation_report(const PhotonState& state) {
  return expectation_report(state, default_scheme(state));
}

double gamma_squared(const PhotonState& state, const QuadratureScheme& scheme) {
  return expectation_report(state, scheme).gamma2;
}

double shifted_gamma2(const PhotonState& state, double kshift, const QuadratureScheme& scheme) {
  if (!(kshift >= 0.0)) {
    throw DomainError("shifted_gamma2: shift must be nonnegative");
  }
  return expectation_report(state, scheme, Connection::shifted(kshift)).gamma2;
}

bool axis_divergence(const PhotonState& state, const Connection& conn) {
  const RadialHint hint = state.radial_hint();
  std::array<double, 3> ks{};
  if (hint.decay == RadialHint::Decay::Compact) {
    ks = {0.25 * hint.kmax, 0.5 * hint.kmax, 0.75 * hint.kmax};
  } else {
    const double unit = 1.0 / (state.scale() * hint.rate);
    ks = {0.5 * unit, unit, 2.0 * unit};
  }
  constexpr std::array<double, 4> phis{0.0, 1.0, 2.5, 4.0};
  constexpr double t_far = 1e-3;
  constexpr double t_near = 1e-5;
  const int lam = state.helicity();

  double g_ref = 0.0;
  auto max_dphi = [&](double theta) {
    double m = 0.0;
    for (double k : ks) {
      for (double phi : phis) {
        const ModeSample g = detail::to_g(state.sample(k, theta, phi), k);
        g_ref = std::max(g_ref, std::abs(g.f));
        const double st = std::sin(theta);
        const auto d = detail::covariant_components(g, k, st, lam, conn.azimuthal_factor(k, theta));
        m = std::max(m, std::abs(d.p) * k);
      }
    }
    return m;
  };
  max_dphi(0.5 * kPi);
  for (bool north : {true, false}) {
    const double far = max_dphi(north ? t_far : kPi - t_far);
    const double near = max_dphi(north ? t_near : kPi - t_near);
    if (near == 0.0 || far == 0.0) {
      continue;
    }
    const double exponent = std::log(far / near) / std::log(t_far / t_near);
    // A 1/theta law with a coefficient comparable to the state itself; tiny
    // coefficients come from interpolation noise and do not affect the sums.
    if (exponent < -0.5 && near * t_near > 1e-3 * g_ref) {
      return true;
    }
  }
  return false;
}

double one_dimensional_product(const PhotonState& state, const AxisVector& direction,
                               const QuadratureScheme& scheme) {
  if (direction.n().cross(state.axis().n()).norm() > 1e-12) {
    throw DomainError("one_dimensional_product: direction must be parallel to the state's axis");
  }
  CompensatedSum norm, x1, x2, p1, p2;
  detail::for_each_node(state, scheme, [&](const detail::Node& n) {
    const ModeSample g = detail::to_g(n.s, n.k);
    const cd dz = n.cos_t * g.df_dk - (n.sin_t / n.k) * g.df_dtheta;
    const double w = n.weight * n.k * n.k;
    const double dens = std::norm(g.f);
    const double kz = n.k * n.cos_t;
    norm.add(w * dens);
    x1.add(w * std::real(kI * std::conj(g.f) * dz));
    x2.add(w * std::norm(dz));
    p1.add(w * kz * dens);
    p2.add(w * kz * kz * dens);
  });
  const double nn = norm.value();
  const double mx = x1.value() / nn;
  const double mp = p1.value() / nn;
  const double var_x = x2.value() / nn - mx * mx;
  const double var_p = p2.value() / nn - mp * mp;
  return std::sqrt(var_x * var_p);
}

FocalReport focal_volume_report(double varR, double varP, double gamma_bound) {
  if (!(varR > 0.0) || !(varP > 0.0) || !(gamma_bound > 0.0)) {
    throw DomainError("focal_volume_report: variances and bound must be positive");
  }
  FocalReport f;
  f.V_f = std::pow(varR, 1.5);
  f.V_min = std::pow(gamma_bound, 3) / std::pow(varP, 1.5);
  f.satisfied = f.V_f >= f.V_min * (1.0 - 1e-12);
  return f;
}

} // namespace photon
