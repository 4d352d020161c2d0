#pragma once

#include <nlohmann/json.hpp>

#include "photon/lightcone.hpp"
#include "photon/quadrature.hpp"
#include "photon/states.hpp"

namespace photon {

/// Single-photon moments in the d^3k measure on g = f / sqrt(k).
///
/// Lengths are in the unit of the momenta (k in 1/a gives R in a); `scale`
/// records the state's a. `divergent` is set when the axis check finds a
/// non-integrable 1/sin^2 term (s-like states); the numbers are then
/// quadrature artefacts.
struct ExpectationReport {
  double norm = 0.0;
  Vec3 mean_R = Vec3::Zero();
  double RR = 0.0;
  Vec3 mean_P = Vec3::Zero();
  double PP = 0.0;
  double varR = 0.0;
  double varP = 0.0;
  double gamma2 = 0.0;
  double variance_product = 0.0;
  double scale = 1.0;
  bool divergent = false;
};

/// Keys exactly: norm, mean_R, RR, mean_P, PP, varR, varP, gamma2, variance_product.
nlohmann::json to_json(const ExpectationReport& r);

ExpectationReport expectation_report(const PhotonState& state, const QuadratureScheme& scheme,
                                     const Connection& conn = Connection::standard());
ExpectationReport expectation_report(const PhotonState& state);

/// RR * PP / norm^2, unchanged by rescaling the state.
double gamma_squared(const PhotonState& state, const QuadratureScheme& scheme);

/// Same functional with the connection evaluated at k + kshift n.
double shifted_gamma2(const PhotonState& state, double kshift, const QuadratureScheme& scheme);

/// True when |D_phi g| grows near either pole at least like 1/sqrt(theta),
/// i.e. when the 1/sin^2(theta) part of <R.R> is not integrable.
bool axis_divergence(const PhotonState& state, const Connection& conn = Connection::standard());

/// Delta X * Delta P along `direction`, which must coincide with the state's
/// axis (there the covariant derivative is the plain derivative). Throws
/// DomainError otherwise.
double one_dimensional_product(const PhotonState& state, const AxisVector& direction,
                               const QuadratureScheme& scheme);

struct FocalReport {
  double V_f = 0.0;
  double V_min = 0.0;
  bool satisfied = false;
};

/// V_f = varR^{3/2}, V_min = gamma_bound^3 / varP^{3/2}.
FocalReport focal_volume_report(double varR, double varP, double gamma_bound);

} // namespace photon
