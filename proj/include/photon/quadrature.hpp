#pragma once

#include <functional>
#include <vector>

namespace photon {

class PhotonState;

/// Weight function of the radial Gauss rule.
///   GaussLike:     kappa^power exp(-kappa^2) on [0, inf)
///   Exponential:   kappa^power exp(-kappa)   on [0, inf)
///   GenericMapped: Gauss-Legendre on [0, 1] (power ignored)
enum class RadialWeight { GaussLike, Exponential, GenericMapped };

/// Gauss rule for one of the radial weights, with weights already divided by
/// the weight function: sum_i weights[i] F(nodes[i]) ~ int F(kappa) dkappa,
/// exact when F / weight is a polynomial of degree < 2 n.
struct RadialRule {
  RadialWeight family = RadialWeight::GaussLike;
  double power = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

RadialRule radial_rule(RadialWeight family, int n, double power = 0.0);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product rule for integrals over momentum space in the spherical
/// coordinates of a state's axis.
///
/// Physical radial nodes are k = kappa * radial_scale. The polar rule is
/// Gauss-Legendre in cos(theta) (no nodes on the axis), the azimuthal rule
/// the uniform trapezoid. `measure_exponent` is the power of kappa applied by
/// `integrate_radial`; the functionals apply their own measures.
struct QuadratureScheme {
  RadialRule radial;
  double radial_scale = 1.0;
  std::vector<double> cos_theta;
  std::vector<double> theta_weights;
  std::vector<double> phi;
  double phi_weight = 0.0;
  int measure_exponent = 0;

  int nk() const { return static_cast<int>(radial.nodes.size()); }
  int ntheta() const { return static_cast<int>(cos_theta.size()); }
  int nphi() const { return static_cast<int>(phi.size()); }
};

/// Orders must be at least 4; throws DomainError otherwise.
QuadratureScheme build_quadrature(RadialWeight family, int nk, int ntheta, int nphi, int measure_exponent,
                                  double power = 0.0);

/// sum_i w_i kappa_i^measure_exponent F(kappa_i).
double integrate_radial(const QuadratureScheme& scheme, const std::function<double(double)>& f);

/// sum over theta and phi nodes of F(theta, phi) dOmega.
double integrate_solid_angle(const QuadratureScheme& scheme, const std::function<double(double, double)>& f);

struct QuadratureOrders {
  int nk = 40;
  int ntheta = 24;
  int nphi = 16;
};

/// Scheme matched to the state's radial behaviour: the radial weight power is
/// 2 p - 1 for f ~ k^p near the origin and the decay family and rate come
/// from the state's RadialHint. For the closed-form families the single-photon
/// and beam integrands are then polynomials times the weight.
QuadratureScheme default_scheme(const PhotonState& state, QuadratureOrders orders = {});

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
  void add(double x);
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace photon
