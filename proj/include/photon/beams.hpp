#pragma once

#include <nlohmann/json.hpp>

#include "photon/constants.hpp"
#include "photon/functionals.hpp"

namespace photon {

/// Large-photon-number coherent-beam functional of a mode f (d^3k measure).
///
/// With H = int |f|^2, K = int k |f|^2 and Q = int k |D f|^2:
///   gamma2      = Q K / H^2
///   kappa_scale = H / K
///   dispersionP = K / ||f||^2           (times <N>)
///   dispersionR = Q ||f||^2 / H^2       (divided by <N>)
/// where ||f||^2 = int |f|^2 / k. The photon number cancels in the product,
/// so dispersionR * dispersionP = gamma2.
struct BeamReport {
  double gamma2 = 0.0;
  double kappa_scale = 0.0;
  double dispersionP = 0.0;
  double dispersionR = 0.0;
  FocalReport focal;
  bool divergent = false;
};

/// `gamma_bound` feeds the focal-volume bound (defaults to the beam minimum).
BeamReport beam_gamma2(const PhotonState& state, const QuadratureScheme& scheme,
                       double gamma_bound = kGammaBeam);
BeamReport beam_gamma2(const PhotonState& state);

double kappa_scale(const PhotonState& state, const QuadratureScheme& scheme);

/// Keys: gamma2, kappa_scale, dispersionP, dispersionR, V_f, V_min.
nlohmann::json to_json(const BeamReport& r);

} // namespace photon
