#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "photon/lightcone.hpp"

namespace photon {

enum class NormConvention {
  RelativisticF,   ///< f, normed with d^3k / k
  NonrelativisticG ///< g = f / sqrt(k), normed with d^3k
};

enum class StateFamily { SaturatorSingle, SaturatorBeam, TrialPoly, Gaussian1D, Grid, Analytic };

std::string to_string(StateFamily family);

/// Value of f and its partials in the state's own spherical coordinates
/// (polar axis = the state's gauge axis n).
struct ModeSample {
  cd f{0.0, 0.0};
  cd df_dk{0.0, 0.0};
  cd df_dtheta{0.0, 0.0};
  cd df_dphi{0.0, 0.0};
};

/// Shape of |f|^2 along k, used to pick a matching radial quadrature.
///
/// Near the origin f ~ (a k)^power. Gaussian: |f|^2 ~ exp(-(rate a k)^2).
/// Exponential: |f|^2 ~ exp(-rate a k). Compact: supported on k <= kmax.
struct RadialHint {
  enum class Decay { Gaussian, Exponential, Compact };
  Decay decay = Decay::Gaussian;
  double power = 0.0;
  double rate = 1.0;
  double kmax = 0.0;
};

/// f sampled on a uniform tensor grid: k in [0, kmax] (nk points), theta in
/// [0, pi] (ntheta points), phi in [0, 2 pi) (nphi points, periodic).
/// Row-major with phi fastest.
struct SampledGrid {
  double kmax = 0.0;
  int nk = 0;
  int ntheta = 0;
  int nphi = 0;
  std::vector<cd> values;

  std::size_t index(int ik, int it, int ip) const {
    return (static_cast<std::size_t>(ik) * ntheta + it) * nphi + ip;
  }
};

/// A one-photon (or beam-mode) wave function f_lambda(k) of fixed helicity.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class PhotonState {
public:
  struct SaturatorSingle {
    int m = 0;
    int n = 0; ///< radial excitation; 0 is the saturating ground level
  };
  struct SaturatorBeam {
    int m = 0;
    int n = 0;
  };
  struct TrialPoly {
    int base_m = 1;
    std::vector<double> coeffs; ///< a_1..a_q of 1 + sum a_i (a k cos theta)^i
  };
  struct Gaussian1D {
    double width = 1.0;
  };
  struct Grid {
    std::shared_ptr<const SampledGrid> samples;
    std::shared_ptr<const std::vector<cd>> d_dk;
    std::shared_ptr<const std::vector<cd>> d_dtheta;
    std::shared_ptr<const std::vector<cd>> d_dphi;
  };
  struct Analytic {
    std::function<ModeSample(double k, double theta, double phi)> fn;
    RadialHint hint;
    std::string label = "analytic";
  };
  using Family = std::variant<SaturatorSingle, SaturatorBeam, TrialPoly, Gaussian1D, Grid, Analytic>;

  PhotonState(Family family, double scale, int helicity, AxisVector axis);

  StateFamily family() const;
  const Family& details() const { return family_; }
  double scale() const { return scale_; }
  int helicity() const { return helicity_; }
  const AxisVector& axis() const { return axis_; }

  /// f and partials at local spherical coordinates (k, theta, phi).
  ModeSample sample(double k, double theta, double phi) const;

  /// f (or g = f / sqrt(k)) at a lab-frame momentum.
  cd evaluate(const MomentumPoint& k, NormConvention conv = NormConvention::RelativisticF) const;

  /// Same as `evaluate`, plus the partials (d/dk, d/dtheta, d/dphi) of the
  /// chosen convention in the state's local spherical coordinates.
  ModeSample evaluate_with_gradient(const MomentumPoint& k,
                                    NormConvention conv = NormConvention::RelativisticF) const;

  /// False for families evaluated only by value (partials from differences).
  bool has_analytic_partials() const;

  RadialHint radial_hint() const;

private:
  Family family_;
  double scale_;
  int helicity_;
  AxisVector axis_;
  double norm_const_ = 1.0;
};

/// Single-photon saturators f_0, f_+- (m = 0, +-1), or the radial level n
/// above them with the same angular factor. Normalized to 1 with d^3k/k.
PhotonState saturator_single(int m, double a = 1.0, int n = 0, int helicity = 1,
                             AxisVector axis = AxisVector::z());

/// Beam-mode saturators with radial part (a k)^{sqrt2-1} exp(-gamma a k).
PhotonState saturator_beam(int m, double a = 1.0, int n = 0, int helicity = 1,
                           AxisVector axis = AxisVector::z());

/// f_{base_m} times 1 + a_1 (a k cos theta) + ... + a_q (a k cos theta)^q.
/// With `strict`, more than six coefficients is a DomainError.
PhotonState trial_state(int base_m, std::vector<double> coeffs, double a = 1.0, bool strict = false);

/// g = N a (k_x + i lambda k_y) exp(-(a^2 k_perp^2 + width^2 k_z^2)/2): a
/// Gaussian in the direction of n with a fixed transverse profile of size a.
PhotonState gaussian_1d(double width, double a = 1.0, int helicity = 1,
                        AxisVector axis = AxisVector::z());

/// Tensor-grid state. Gradients at grid nodes come from fourth-order central
/// differences (periodic in phi, reflected through the poles in theta when
/// nphi is even); values and gradients are interpolated trilinearly.
PhotonState grid_state(SampledGrid grid, double a = 1.0, int helicity = 1,
                       AxisVector axis = AxisVector::z());

/// Linear combination sum c_i f_i as an Analytic state. All terms must share
/// helicity and axis; the result takes the scale and radial hint of the
/// first term (with the smallest near-origin power among the terms).
PhotonState superpose(const std::vector<std::pair<cd, PhotonState>>& terms);

/// Sample any state onto a grid (used for resampling checks and for export).
SampledGrid sample_to_grid(const PhotonState& state, double kmax, int nk, int ntheta, int nphi);

/// Closed-form single-photon saturator normalization sqrt(3 / (4 pi Gamma(gamma))).
double saturator_single_norm();
/// Closed-form beam saturator normalization (2 gamma)^sqrt2 sqrt(3 / (8 pi Gamma(2 sqrt2))).
double saturator_beam_norm();

/// Cartesian vector field whose spherical projections are the three
/// saturators: F = A a (ak)^{gamma-1} exp(-(ak)^2/2) [k x (n x k) + i k (n x k)] / (k |n x k|).
CVec3 saturator_vector_field(const MomentumPoint& k, double a = 1.0, const AxisVector& n = AxisVector::z());

/// Recovers (f_-, f_0, f_+) from the Cartesian field: f_0 = F.n,
/// f_+ = -(F.e1 + i F.e2)/sqrt2, f_- = (F.e1 - i F.e2)/sqrt2.
std::array<cd, 3> project_vector_field(const CVec3& field, const AxisVector& n = AxisVector::z());

} // namespace photon
