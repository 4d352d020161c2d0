#include "photon/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/states.hpp"

namespace photon {

namespace {

constexpr cd kI{0.0, 1.0};

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) {
    p += 2.0 * kPi;
  }
  return p >= 2.0 * kPi ? 0.0 : p;
}

void check_off_axis(const Vec3& kv, const AxisVector& n, double eps_axis) {
  const double k = kv.norm();
  if (n.n().cross(kv).norm() < eps_axis * std::max(k, std::numeric_limits<double>::min())) {
    throw VortexLineError("momentum lies on the vortex line of the polarization gauge");
  }
}

double fd_step(double k) { return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, k); }

// Central-difference gradient of a complex scalar field with one Richardson level.
template <class F>
CVec3 richardson_gradient(F&& field, const Vec3& x, double h) {
  CVec3 out;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    const cd coarse = (field(x + h * e) - field(x - h * e)) / (2.0 * h);
    const cd fine = (field(x + 0.5 * h * e) - field(x - 0.5 * h * e)) / h;
    out(i) = (4.0 * fine - coarse) / 3.0;
  }
  return out;
}

cd g_value(const PhotonState& state, const Vec3& kv) {
  return state.evaluate(MomentumPoint::from_cartesian(kv), NormConvention::NonrelativisticG);
}

} // namespace

AxisVector::AxisVector(const Vec3& v) {
  const double len = v.norm();
  if (!(len > 1e-300) || !std::isfinite(len)) {
    throw DomainError("axis vector must be nonzero and finite");
  }
  n_ = v / len;
  const Vec3 helper = std::abs(n_.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  e1_ = (helper - helper.dot(n_) * n_).normalized();
  e2_ = n_.cross(e1_);
}

MomentumPoint MomentumPoint::from_cartesian(const Vec3& kv) {
  MomentumPoint p;
  p.cartesian = kv;
  p.k = kv.norm();
  p.theta = p.k > 0.0 ? std::acos(std::clamp(kv.z() / p.k, -1.0, 1.0)) : 0.0;
  p.phi = wrap_phi(std::atan2(kv.y(), kv.x()));
  return p;
}

MomentumPoint MomentumPoint::from_spherical(double k, double theta, double phi) {
  if (!(k >= 0.0)) {
    throw DomainError("momentum magnitude must be nonnegative");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw DomainError("polar angle must lie in [0, pi]");
  }
  MomentumPoint p;
  p.k = k;
  p.theta = theta;
  p.phi = wrap_phi(phi);
  p.cartesian = Vec3(k * std::sin(theta) * std::cos(phi), k * std::sin(theta) * std::sin(phi), k * std::cos(theta));
  return p;
}

LocalSpherical local_spherical(const Vec3& kv, const AxisVector& axis) {
  const Vec3 l = axis.to_local(kv);
  const double k = l.norm();
  const double theta = k > 0.0 ? std::acos(std::clamp(l.z() / k, -1.0, 1.0)) : 0.0;
  return {k, theta, wrap_phi(std::atan2(l.y(), l.x()))};
}

Vec3 from_local_spherical(double k, double theta, double phi, const AxisVector& axis) {
  const double st = std::sin(theta);
  return axis.to_lab(Vec3(k * st * std::cos(phi), k * st * std::sin(phi), k * std::cos(theta)));
}

double Connection::azimuthal_factor(double k, double theta) const {
  switch (kind) {
  case Kind::Standard:
    return std::cos(theta);
  case Kind::Shifted: {
    const double z = k * std::cos(theta) + shift;
    const double perp = k * std::sin(theta);
    const double r = std::hypot(z, perp);
    return r > 0.0 ? z / r : 1.0;
  }
  case Kind::InfiniteMomentum:
    return 1.0;
  }
  return std::cos(theta);
}

CVec3 polarization_vector(const MomentumPoint& k, const AxisVector& n, double eps_axis) {
  check_off_axis(k.cartesian, n, eps_axis);
  const Vec3& kv = k.cartesian;
  const Vec3 nxk = n.n().cross(kv);
  const double denom = kSqrt2 * k.k * nxk.norm();
  const Vec3 re = kv.cross(nxk) / denom;
  const Vec3 im = -k.k * nxk / denom;
  return re.cast<cd>() + kI * im.cast<cd>();
}

Vec3 berry_connection(const MomentumPoint& k, const AxisVector& n, double eps_axis) {
  return connection_vector(Connection::standard(), k, n, eps_axis);
}

Vec3 connection_vector(const Connection& conn, const MomentumPoint& k, const AxisVector& n, double eps_axis) {
  check_off_axis(k.cartesian, n, eps_axis);
  const Vec3 nxk = n.n().cross(k.cartesian);
  const double perp = nxk.norm();
  const auto loc = local_spherical(k.cartesian, n);
  // n x k / |n x k|^2 = phi_hat / (k sin theta).
  return conn.azimuthal_factor(loc.k, loc.theta) * nxk / (perp * perp);
}

Vec3 berry_curvature(const MomentumPoint& k, const AxisVector& n, double h, double tol) {
  if (!(h > 0.0)) {
    throw DomainError("berry_curvature: step must be positive");
  }
  if (n.n().cross(k.cartesian).norm() < 10.0 * h) {
    throw VortexLineError("berry_curvature: point closer than 10 h to the vortex line");
  }
  auto curl = [&](double step) {
    Eigen::Matrix3d jac; // jac(i, j) = d alpha_i / d k_j
    for (int j = 0; j < 3; ++j) {
      const Vec3 e = Vec3::Unit(j);
      const Vec3 plus = berry_connection(MomentumPoint::from_cartesian(k.cartesian + step * e), n);
      const Vec3 minus = berry_connection(MomentumPoint::from_cartesian(k.cartesian - step * e), n);
      jac.col(j) = (plus - minus) / (2.0 * step);
    }
    return Vec3(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1));
  };
  const Vec3 c1 = curl(h), c2 = curl(0.5 * h), c3 = curl(0.25 * h);
  const Vec3 coarse = (4.0 * c2 - c1) / 3.0;
  const Vec3 fine = (4.0 * c3 - c2) / 3.0;
  if ((coarse - fine).norm() > tol) {
    throw StepTooLargeError("berry_curvature: truncation estimate exceeds tolerance; reduce h");
  }
  return fine;
}

CVec3 covariant_gradient(const PhotonState& state, int helicity, const MomentumPoint& k, const Connection& conn) {
  if (helicity != 1 && helicity != -1) {
    throw DomainError("helicity must be +1 or -1");
  }
  const AxisVector& axis = state.axis();
  check_off_axis(k.cartesian, axis, kAxisExclusion);
  const auto loc = local_spherical(k.cartesian, axis);
  const ModeSample s = state.evaluate_with_gradient(k, NormConvention::NonrelativisticG);
  const double st = std::sin(loc.theta);
  const double ct = std::cos(loc.theta);
  const double sp = std::sin(loc.phi);
  const double cp = std::cos(loc.phi);
  const cd d_r = s.df_dk;
  const cd d_t = s.df_dtheta / loc.k;
  const cd d_p = (s.df_dphi - kI * static_cast<double>(helicity) * conn.azimuthal_factor(loc.k, loc.theta) * s.f) /
                 (loc.k * st);
  const Vec3 r_hat(st * cp, st * sp, ct);
  const Vec3 t_hat(ct * cp, ct * sp, -st);
  const Vec3 p_hat(-sp, cp, 0.0);
  const CVec3 local = d_r * r_hat.cast<cd>() + d_t * t_hat.cast<cd>() + d_p * p_hat.cast<cd>();
  return axis.to_lab(local);
}

CVec3 covariant_gradient_fd(const PhotonState& state, int helicity, const MomentumPoint& k, const Connection& conn) {
  if (helicity != 1 && helicity != -1) {
    throw DomainError("helicity must be +1 or -1");
  }
  const AxisVector& axis = state.axis();
  const Vec3 alpha = connection_vector(conn, k, axis);
  const CVec3 grad = richardson_gradient([&](const Vec3& x) { return g_value(state, x); }, k.cartesian, fd_step(k.k));
  return grad - kI * static_cast<double>(helicity) * g_value(state, k.cartesian) * alpha.cast<cd>();
}

double canonical_commutator_defect(const PhotonState& state, const MomentumPoint& k) {
  const AxisVector& axis = state.axis();
  const double lam = state.helicity();
  const Vec3 alpha = berry_connection(k, axis);
  const double h = fd_step(k.k);
  const cd g = g_value(state, k.cartesian);
  const CVec3 dg = richardson_gradient([&](const Vec3& x) { return g_value(state, x); }, k.cartesian, h) -
                   kI * lam * g * alpha.cast<cd>();
  const double scale = std::max(std::abs(g), std::numeric_limits<double>::min());
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    const CVec3 dkg =
        richardson_gradient([&](const Vec3& x) { return x(j) * g_value(state, x); }, k.cartesian, h) -
        kI * lam * k.cartesian(j) * g * alpha.cast<cd>();
    for (int i = 0; i < 3; ++i) {
      // [R_i, P_j] g with R = i D: i D_i (k_j g) - k_j i D_i g, expected i delta_ij g.
      const cd comm = kI * dkg(i) - k.cartesian(j) * kI * dg(i);
      const cd expected = i == j ? kI * g : cd{0.0, 0.0};
      worst = std::max(worst, std::abs(comm - expected) / scale);
    }
  }
  return worst;
}

} // namespace photon
