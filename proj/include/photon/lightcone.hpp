#pragma once

#include <complex>

#include <Eigen/Dense>

namespace photon {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using cd = std::complex<double>;

class PhotonState;

/// Unit vector fixing the gauge of the polarization vectors (the direction of
/// the vortex line of the Berry connection).
class AxisVector {
public:
  /// Normalizes `v`; throws DomainError for a (numerically) zero vector.
  explicit AxisVector(const Vec3& v);
  static AxisVector z() { return AxisVector(Vec3::UnitZ()); }

  const Vec3& n() const { return n_; }
  /// Right-handed orthonormal frame (e1, e2, n). For n = z this is (x, y, z).
  const Vec3& e1() const { return e1_; }
  const Vec3& e2() const { return e2_; }

  /// Components of a lab vector in the (e1, e2, n) frame, and back.
  Vec3 to_local(const Vec3& v) const { return {v.dot(e1_), v.dot(e2_), v.dot(n_)}; }
  Vec3 to_lab(const Vec3& v) const { return v.x() * e1_ + v.y() * e2_ + v.z() * n_; }
  CVec3 to_lab(const CVec3& v) const {
    return v.x() * e1_.cast<cd>() + v.y() * e2_.cast<cd>() + v.z() * n_.cast<cd>();
  }

private:
  Vec3 n_;
  Vec3 e1_;
  Vec3 e2_;
};

/// Wave vector with a cached spherical representation relative to the lab z
/// axis (theta in [0, pi], phi in [0, 2 pi)).
struct MomentumPoint {
  Vec3 cartesian = Vec3::Zero();
  double k = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  static MomentumPoint from_cartesian(const Vec3& kv);
  static MomentumPoint from_spherical(double k, double theta, double phi);
};

/// Spherical coordinates of `kv` relative to the frame of `axis`.
struct LocalSpherical {
  double k;
  double theta;
  double phi;
};
LocalSpherical local_spherical(const Vec3& kv, const AxisVector& axis);
Vec3 from_local_spherical(double k, double theta, double phi, const AxisVector& axis);

/// Which gauge field enters the covariant derivative D = grad - i lambda alpha.
///
/// Standard is alpha(k). Shifted evaluates alpha(k + shift n), the connection
/// seen by a state whose mean momentum was removed by a shift along n.
/// InfiniteMomentum is the shift -> infinity limit (n x k)/|n x k|^2.
struct Connection {
  enum class Kind { Standard, Shifted, InfiniteMomentum };
  Kind kind = Kind::Standard;
  double shift = 0.0;

  static Connection standard() { return {}; }
  static Connection shifted(double s) { return {Kind::Shifted, s}; }
  static Connection infinite_momentum() { return {Kind::InfiniteMomentum, 0.0}; }

  /// alpha = azimuthal_factor(k, theta) * phi_hat / (k sin theta) in the axis
  /// frame. Returns cos(theta) for Standard, the cosine of the polar angle of
  /// k + shift n for Shifted, and 1 for InfiniteMomentum.
  double azimuthal_factor(double k, double theta) const;
};

/// Default exclusion radius around the vortex line, relative to k.
inline constexpr double kAxisExclusion = 1e-10;

/// e(k) = [k x (n x k) - i k (n x k)] / (sqrt(2) k |n x k|).
CVec3 polarization_vector(const MomentumPoint& k, const AxisVector& n,
                          double eps_axis = kAxisExclusion);

/// alpha(k) = (n.k)(n x k) / (k |n x k|^2).
Vec3 berry_connection(const MomentumPoint& k, const AxisVector& n,
                      double eps_axis = kAxisExclusion);

/// Connection of the given kind evaluated at lab point k.
Vec3 connection_vector(const Connection& conn, const MomentumPoint& k, const AxisVector& n,
                       double eps_axis = kAxisExclusion);

/// Central-difference curl of alpha, Richardson-extrapolated from steps h/2
/// and h/4. The exact answer is the unit monopole -k_hat/k^2. Throws
/// StepTooLargeError when the same extrapolation from (h, h/2) differs by more
/// than `tol`, VortexLineError when k is closer than 10 h to the axis.
Vec3 berry_curvature(const MomentumPoint& k, const AxisVector& n, double h, double tol = 1e-6);

/// D_lambda g at k, with g = f / sqrt(k) for the state's amplitude f.
/// Uses the state's analytic partials when it has them, otherwise central
/// differences with one Richardson level.
CVec3 covariant_gradient(const PhotonState& state, int helicity, const MomentumPoint& k,
                         const Connection& conn = Connection::standard());

/// Same, always by finite differences (Cartesian central differences, one
/// Richardson level). Exposed so the analytic route can be checked.
CVec3 covariant_gradient_fd(const PhotonState& state, int helicity, const MomentumPoint& k,
                            const Connection& conn = Connection::standard());

/// Largest deviation of [R_i, P_j] g from i delta_ij g, relative to |g|, with
/// R = i D and P = k, both sides differentiated numerically.
double canonical_commutator_defect(const PhotonState& state, const MomentumPoint& k);

} // namespace photon
