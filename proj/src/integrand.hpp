#pragma once

#include <cmath>

#include "photon/quadrature.hpp"
#include "photon/states.hpp"

namespace photon::detail {

inline constexpr cd kI{0.0, 1.0};

/// One quadrature node in the state's local spherical frame. `weight` is
/// dk dOmega (no power of k).
struct Node {
  double k;
  double theta;
  double phi;
  double sin_t;
  double cos_t;
  double weight;
  ModeSample s;
};

template <class F>
void for_each_node(const PhotonState& state, const QuadratureScheme& q, F&& fn) {
  for (int i = 0; i < q.nk(); ++i) {
    const double k = q.radial.nodes[i] * q.radial_scale;
    const double wk = q.radial.weights[i] * q.radial_scale;
    for (int j = 0; j < q.ntheta(); ++j) {
      const double c = q.cos_theta[j];
      const double theta = std::acos(c);
      const double st = std::sqrt((1.0 - c) * (1.0 + c));
      const double wt = wk * q.theta_weights[j] * q.phi_weight;
      for (double phi : q.phi) {
        fn(Node{k, theta, phi, st, c, wt, state.sample(k, theta, phi)});
      }
    }
  }
}

/// Converts partials of f into partials of g = f / sqrt(k).
inline ModeSample to_g(const ModeSample& s, double k) {
  const double r = 1.0 / std::sqrt(k);
  return {s.f * r, (s.df_dk - s.f * (0.5 / k)) * r, s.df_dtheta * r, s.df_dphi * r};
}

/// Components of the covariant gradient along (r, theta, phi) unit vectors,
/// with the azimuthal connection factor A (cos theta for the standard gauge).
struct SphericalGradient {
  cd r;
  cd t;
  cd p;
  double norm2() const { return std::norm(r) + std::norm(t) + std::norm(p); }
};

inline SphericalGradient covariant_components(const ModeSample& s, double k, double sin_t, int helicity,
                                              double azimuthal_factor) {
  return {s.df_dk, s.df_dtheta / k,
          (s.df_dphi - kI * (static_cast<double>(helicity) * azimuthal_factor) * s.f) / (k * sin_t)};
}

/// Local Cartesian components of a vector given along (r, theta, phi).
template <class T>
Eigen::Matrix<T, 3, 1> spherical_to_local(T vr, T vt, T vp, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta), sp = std::sin(phi), cp = std::cos(phi);
  return {vr * st * cp + vt * ct * cp - vp * sp, vr * st * sp + vt * ct * sp + vp * cp, vr * ct - vt * st};
}

} // namespace photon::detail
