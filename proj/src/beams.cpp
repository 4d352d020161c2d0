#include "photon/beams.hpp"

#include "integrand.hpp"
#include "photon/errors.hpp"

namespace photon {

namespace {

struct BeamSums {
  double norm;
  double h;
  double k;
  double q;
};

BeamSums beam_sums(const PhotonState& state, const QuadratureScheme& scheme) {
  const int lam = state.helicity();
  CompensatedSum norm, h, k, q;
  detail::for_each_node(state, scheme, [&](const detail::Node& n) {
    const auto d = detail::covariant_components(n.s, n.k, n.sin_t, lam, n.cos_t);
    const double w = n.weight * n.k * n.k;
    const double dens = std::norm(n.s.f);
    norm.add(w * dens / n.k);
    h.add(w * dens);
    k.add(w * n.k * dens);
    q.add(w * n.k * d.norm2());
  });
  BeamSums s{norm.value(), h.value(), k.value(), q.value()};
  if (!(s.h > 0.0)) {
    throw DomainError("beam functional: state has zero norm under the quadrature");
  }
  return s;
}

} // namespace

BeamReport beam_gamma2(const PhotonState& state, const QuadratureScheme& scheme, double gamma_bound) {
  const BeamSums s = beam_sums(state, scheme);
  BeamReport r;
  r.gamma2 = s.q * s.k / (s.h * s.h);
  r.kappa_scale = s.h / s.k;
  r.dispersionP = s.k / s.norm;
  r.dispersionR = s.q * s.norm / (s.h * s.h);
  r.focal = focal_volume_report(r.dispersionR, r.dispersionP, gamma_bound);
  r.divergent = axis_divergence(state);
  return r;
}

BeamReport beam_gamma2(const PhotonState& state) { return beam_gamma2(state, default_scheme(state)); }

double kappa_scale(const PhotonState& state, const QuadratureScheme& scheme) {
  const BeamSums s = beam_sums(state, scheme);
  return s.h / s.k;
}

nlohmann::json to_json(const BeamReport& r) {
  return {{"gamma2", r.gamma2},           {"kappa_scale", r.kappa_scale}, {"dispersionP", r.dispersionP},
          {"dispersionR", r.dispersionR}, {"V_f", r.focal.V_f},           {"V_min", r.focal.V_min}};
}

} // namespace photon
