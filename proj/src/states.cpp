#include "photon/states.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <utility>

#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/specfun.hpp"

namespace photon {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr cd kI{0.0, 1.0};

struct Angular {
  double value;
  double dtheta;
};

// Angular factors of the saturators: sin(theta) for m = 0 and
// (1 + m lambda cos theta)/sqrt2 for m = +-1.
Angular saturator_angular(int m, int helicity, double theta) {
  if (m == 0) {
    return {std::sin(theta), std::cos(theta)};
  }
  const double s = static_cast<double>(m * helicity);
  return {(1.0 + s * std::cos(theta)) / kSqrt2, -s * std::sin(theta) / kSqrt2};
}

struct Radial {
  double value;
  double dkappa;
};

// Single-photon level (n, j = 1): kappa^p exp(-kappa^2/2) 1F1(-n; nu; kappa^2), p = nu - 1.
struct SingleRadial {
  double p = kGammaSingle - 1.0;
  PolynomialCoeffs poly;

  Radial operator()(double kappa) const {
    const double x = kappa * kappa;
    const double l = poly(x);
    const double dl = poly.derivative(x);
    const double e = std::exp(-0.5 * x);
    const double pm1 = std::pow(kappa, p - 1.0);
    return {pm1 * kappa * e * l, pm1 * e * ((p - x) * l + 2.0 * x * dl)};
  }
};

// Beam level (n, j = 1): kappa^p exp(-gamma kappa) 1F1(-n; mu; 2 gamma kappa), p = sqrt2 - 1.
struct BeamRadial {
  double p = kSqrt2 - 1.0;
  double gamma = kGammaBeam;
  PolynomialCoeffs poly;

  Radial operator()(double kappa) const {
    const double x = 2.0 * gamma * kappa;
    const double l = poly(x);
    const double dl = poly.derivative(x);
    const double e = std::exp(-gamma * kappa);
    const double pm1 = std::pow(kappa, p - 1.0);
    return {pm1 * kappa * e * l, pm1 * e * ((p - gamma * kappa) * l + x * dl)};
  }
};

SingleRadial single_radial(int n) {
  return {kGammaSingle - 1.0, kummer_polynomial(n, kGammaSingle)};
}

BeamRadial beam_radial(int n) {
  const double gamma = n + kGammaBeam;
  return {kSqrt2 - 1.0, gamma, kummer_polynomial(n, 1.0 + 2.0 * kSqrt2)};
}

// A^2 such that the level is normalized with d^3k/k; closed form through
// Gamma-function moments of the radial polynomial.
double single_norm_constant(int n) {
  const auto poly = kummer_polynomial(n, kGammaSingle);
  double s = 0.0;
  for (std::size_t i = 0; i < poly.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < poly.coefficients.size(); ++j) {
      s += poly.coefficients[i] * poly.coefficients[j] *
           gamma_fn(kGammaSingle + static_cast<double>(i + j));
    }
  }
  return std::sqrt(3.0 / (4.0 * kPi * s));
}

double beam_norm_constant(int n) {
  const auto poly = kummer_polynomial(n, 1.0 + 2.0 * kSqrt2);
  const double gamma = n + kGammaBeam;
  double s = 0.0;
  for (std::size_t i = 0; i < poly.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < poly.coefficients.size(); ++j) {
      s += poly.coefficients[i] * poly.coefficients[j] *
           gamma_fn(2.0 * kSqrt2 + static_cast<double>(i + j));
    }
  }
  return std::pow(2.0 * gamma, kSqrt2) * std::sqrt(3.0 / (8.0 * kPi * s));
}

ModeSample separable_sample(double amplitude, const Angular& ang, const Radial& rad, double a, int m,
                            double phi) {
  const cd phase = std::exp(kI * (static_cast<double>(m) * phi));
  ModeSample s;
  s.f = amplitude * ang.value * rad.value * phase;
  s.df_dk = amplitude * ang.value * a * rad.dkappa * phase;
  s.df_dtheta = amplitude * ang.dtheta * rad.value * phase;
  s.df_dphi = kI * static_cast<double>(m) * s.f;
  return s;
}

void validate_common(double a, int helicity) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("state scale a must be positive and finite");
  }
  if (helicity != 1 && helicity != -1) {
    throw DomainError("helicity must be +1 or -1");
  }
}

void validate_m(int m) {
  if (m < -1 || m > 1) {
    throw DomainError("saturator m must be -1, 0 or +1");
  }
}

// Fourth-order central difference with accessor `at(i)`.
template <class F>
cd central4(F&& at, int i, double h) {
  return (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
}

PhotonState::Grid build_grid(SampledGrid g) {
  if (g.nk < 4 || g.ntheta < 4 || g.nphi < 4) {
    throw StateFormatError("grid needs at least 4 points along each axis");
  }
  if (!(g.kmax > 0.0)) {
    throw StateFormatError("grid kmax must be positive");
  }
  const std::size_t total = static_cast<std::size_t>(g.nk) * g.ntheta * g.nphi;
  if (g.values.size() != total) {
    throw StateFormatError("grid value count does not match nk * ntheta * nphi");
  }
  for (const auto& v : g.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw StateFormatError("grid values must be finite");
    }
  }
  const double hk = g.kmax / (g.nk - 1);
  const double ht = kPi / (g.ntheta - 1);
  const double hp = 2.0 * kPi / g.nphi;
  const bool reflect = g.nphi % 2 == 0;

  std::vector<cd> dk(total), dt(total), dp(total);
  for (int ik = 0; ik < g.nk; ++ik) {
    for (int it = 0; it < g.ntheta; ++it) {
      for (int ip = 0; ip < g.nphi; ++ip) {
        const std::size_t idx = g.index(ik, it, ip);
        // k: one-sided at the ends, second order next to them, fourth order inside.
        auto at_k = [&](int i) { return g.values[g.index(i, it, ip)]; };
        if (ik == 0) {
          dk[idx] = (-3.0 * at_k(0) + 4.0 * at_k(1) - at_k(2)) / (2.0 * hk);
        } else if (ik == g.nk - 1) {
          dk[idx] = (3.0 * at_k(ik) - 4.0 * at_k(ik - 1) + at_k(ik - 2)) / (2.0 * hk);
        } else if (ik == 1 || ik == g.nk - 2) {
          dk[idx] = (at_k(ik + 1) - at_k(ik - 1)) / (2.0 * hk);
        } else {
          dk[idx] = central4(at_k, ik, hk);
        }
        // theta: continue through the poles, f(-t, p) = f(t, p + pi).
        auto at_t = [&](int i) {
          int jp = ip;
          if (i < 0) {
            i = -i;
            jp = (ip + g.nphi / 2) % g.nphi;
          } else if (i > g.ntheta - 1) {
            i = 2 * (g.ntheta - 1) - i;
            jp = (ip + g.nphi / 2) % g.nphi;
          }
          return g.values[g.index(ik, i, jp)];
        };
        if (reflect) {
          dt[idx] = central4(at_t, it, ht);
        } else if (it == 0) {
          dt[idx] = (-3.0 * at_t(0) + 4.0 * at_t(1) - at_t(2)) / (2.0 * ht);
        } else if (it == g.ntheta - 1) {
          dt[idx] = (3.0 * at_t(it) - 4.0 * at_t(it - 1) + at_t(it - 2)) / (2.0 * ht);
        } else if (it == 1 || it == g.ntheta - 2) {
          dt[idx] = (at_t(it + 1) - at_t(it - 1)) / (2.0 * ht);
        } else {
          dt[idx] = central4(at_t, it, ht);
        }
        auto at_p = [&](int i) { return g.values[g.index(ik, it, ((i % g.nphi) + g.nphi) % g.nphi)]; };
        dp[idx] = central4(at_p, ip, hp);
      }
    }
  }
  PhotonState::Grid out;
  out.samples = std::make_shared<const SampledGrid>(std::move(g));
  out.d_dk = std::make_shared<const std::vector<cd>>(std::move(dk));
  out.d_dtheta = std::make_shared<const std::vector<cd>>(std::move(dt));
  out.d_dphi = std::make_shared<const std::vector<cd>>(std::move(dp));
  return out;
}

ModeSample grid_sample(const PhotonState::Grid& grid, double k, double theta, double phi) {
  const SampledGrid& g = *grid.samples;
  if (!(k >= 0.0) || k > g.kmax * (1.0 + 1e-12)) {
    throw OutOfGridError("grid state evaluated outside 0 <= k <= kmax");
  }
  const double hk = g.kmax / (g.nk - 1);
  const double ht = kPi / (g.ntheta - 1);
  const double hp = 2.0 * kPi / g.nphi;

  const double xk = std::min(k / hk, static_cast<double>(g.nk - 1));
  const int ik = std::min(static_cast<int>(xk), g.nk - 2);
  const double tk = xk - ik;

  const double xt = std::clamp(theta, 0.0, kPi) / ht;
  const int it = std::min(static_cast<int>(xt), g.ntheta - 2);
  const double tt = xt - it;

  double pw = std::fmod(phi, 2.0 * kPi);
  if (pw < 0.0) {
    pw += 2.0 * kPi;
  }
  const double xp = pw / hp;
  const int ip = std::min(static_cast<int>(xp), g.nphi - 1);
  const double tp = xp - ip;
  const int ip1 = (ip + 1) % g.nphi;

  auto interp = [&](const std::vector<cd>& v) {
    cd acc{0.0, 0.0};
    for (int a = 0; a < 2; ++a) {
      const double wk = a ? tk : 1.0 - tk;
      for (int b = 0; b < 2; ++b) {
        const double wt = b ? tt : 1.0 - tt;
        acc += wk * wt * ((1.0 - tp) * v[g.index(ik + a, it + b, ip)] + tp * v[g.index(ik + a, it + b, ip1)]);
      }
    }
    return acc;
  };
  return {interp(g.values), interp(*grid.d_dk), interp(*grid.d_dtheta), interp(*grid.d_dphi)};
}

} // namespace

std::string to_string(StateFamily family) {
  switch (family) {
  case StateFamily::SaturatorSingle:
    return "saturator-single";
  case StateFamily::SaturatorBeam:
    return "saturator-beam";
  case StateFamily::TrialPoly:
    return "trial-poly";
  case StateFamily::Gaussian1D:
    return "gaussian-1d";
  case StateFamily::Grid:
    return "grid";
  case StateFamily::Analytic:
    return "analytic";
  }
  return "unknown";
}

PhotonState::PhotonState(Family family, double scale, int helicity, AxisVector axis)
    : family_(std::move(family)), scale_(scale), helicity_(helicity), axis_(std::move(axis)) {
  validate_common(scale_, helicity_);
  std::visit(overloaded{
                 [&](const SaturatorSingle& s) {
                   validate_m(s.m);
                   if (s.n < 0) {
                     throw DomainError("radial level n must be nonnegative");
                   }
                   norm_const_ = single_norm_constant(s.n);
                 },
                 [&](const SaturatorBeam& s) {
                   validate_m(s.m);
                   if (s.n < 0) {
                     throw DomainError("radial level n must be nonnegative");
                   }
                   norm_const_ = beam_norm_constant(s.n);
                 },
                 [&](const TrialPoly& t) {
                   if (t.base_m != 1 && t.base_m != -1) {
                     throw DomainError("trial base m must be +1 or -1");
                   }
                   for (double c : t.coeffs) {
                     if (!std::isfinite(c)) {
                       throw DomainError("trial coefficients must be finite");
                     }
                   }
                   norm_const_ = single_norm_constant(0);
                 },
                 [&](const Gaussian1D& g) {
                   if (!(g.width > 0.0) || !std::isfinite(g.width)) {
                     throw DomainError("gaussian width must be positive");
                   }
                   // Separable in Cartesian components: |g|^2 integrates to pi^{3/2} / (a^2 width) before N.
                   norm_const_ = scale_ * std::sqrt(g.width) / std::pow(kPi, 0.75);
                 },
                 [&](const Grid& g) {
                   if (!g.samples) {
                     throw StateFormatError("grid state without samples");
                   }
                 },
                 [&](const Analytic& an) {
                   if (!an.fn) {
                     throw DomainError("analytic state without a callable");
                   }
                 },
             },
             family_);
}

StateFamily PhotonState::family() const {
  return std::visit(overloaded{
                        [](const SaturatorSingle&) { return StateFamily::SaturatorSingle; },
                        [](const SaturatorBeam&) { return StateFamily::SaturatorBeam; },
                        [](const TrialPoly&) { return StateFamily::TrialPoly; },
                        [](const Gaussian1D&) { return StateFamily::Gaussian1D; },
                        [](const Grid&) { return StateFamily::Grid; },
                        [](const Analytic&) { return StateFamily::Analytic; },
                    },
                    family_);
}

ModeSample PhotonState::sample(double k, double theta, double phi) const {
  const double a = scale_;
  const double kappa = a * k;
  return std::visit(
      overloaded{
          [&](const SaturatorSingle& s) {
            const auto rad = single_radial(s.n)(kappa);
            return separable_sample(norm_const_ * a, saturator_angular(s.m, helicity_, theta), rad, a, s.m, phi);
          },
          [&](const SaturatorBeam& s) {
            const auto rad = beam_radial(s.n)(kappa);
            return separable_sample(norm_const_ * a, saturator_angular(s.m, helicity_, theta), rad, a, s.m, phi);
          },
          [&](const TrialPoly& t) {
            ModeSample base = separable_sample(norm_const_ * a, saturator_angular(t.base_m, helicity_, theta),
                                               single_radial(0)(kappa), a, t.base_m, phi);
            const double c = std::cos(theta);
            const double u = kappa * c;
            double p = 0.0;
            double dp = 0.0;
            for (std::size_t i = t.coeffs.size(); i-- > 0;) {
              dp = dp * u + p;
              p = p * u + t.coeffs[i];
            }
            // p(u) = 1 + u * (a_1 + a_2 u + ...), dp/du from the same Horner pass.
            dp = p + u * dp;
            p = 1.0 + u * p;
            ModeSample s;
            s.f = base.f * p;
            s.df_dk = base.df_dk * p + base.f * dp * a * c;
            s.df_dtheta = base.df_dtheta * p - base.f * dp * kappa * std::sin(theta);
            s.df_dphi = base.df_dphi * p;
            return s;
          },
          [&](const Gaussian1D& g) {
            const double st = std::sin(theta);
            const double ct = std::cos(theta);
            const double w = g.width;
            const double q = a * a * st * st + w * w * ct * ct;
            const double dq = 2.0 * st * ct * (a * a - w * w);
            const double e = std::exp(-0.5 * k * k * q);
            const cd phase = std::exp(kI * (static_cast<double>(helicity_) * phi));
            const double pre = norm_const_ * a * std::pow(k, 1.5);
            ModeSample s;
            s.f = pre * st * e * phase;
            s.df_dk = norm_const_ * a * std::sqrt(k) * st * e * (1.5 - k * k * q) * phase;
            s.df_dtheta = pre * e * (ct - st * 0.5 * k * k * dq) * phase;
            s.df_dphi = kI * static_cast<double>(helicity_) * s.f;
            return s;
          },
          [&](const Grid& g) { return grid_sample(g, k, theta, phi); },
          [&](const Analytic& an) { return an.fn(k, theta, phi); },
      },
      family_);
}

cd PhotonState::evaluate(const MomentumPoint& k, NormConvention conv) const {
  return evaluate_with_gradient(k, conv).f;
}

ModeSample PhotonState::evaluate_with_gradient(const MomentumPoint& k, NormConvention conv) const {
  const auto loc = local_spherical(k.cartesian, axis_);
  ModeSample s = sample(loc.k, loc.theta, loc.phi);
  if (conv == NormConvention::NonrelativisticG) {
    const double r = 1.0 / std::sqrt(loc.k);
    s.df_dk = (s.df_dk - s.f * (0.5 / loc.k)) * r;
    s.f *= r;
    s.df_dtheta *= r;
    s.df_dphi *= r;
  }
  return s;
}

bool PhotonState::has_analytic_partials() const {
  return family() != StateFamily::Grid;
}

RadialHint PhotonState::radial_hint() const {
  return std::visit(overloaded{
                        [](const SaturatorSingle&) {
                          return RadialHint{RadialHint::Decay::Gaussian, kGammaSingle - 1.0, 1.0, 0.0};
                        },
                        [](const SaturatorBeam& s) {
                          return RadialHint{RadialHint::Decay::Exponential, kSqrt2 - 1.0,
                                            2.0 * (s.n + kGammaBeam), 0.0};
                        },
                        [](const TrialPoly&) {
                          return RadialHint{RadialHint::Decay::Gaussian, kGammaSingle - 1.0, 1.0, 0.0};
                        },
                        [&](const Gaussian1D& g) {
                          return RadialHint{RadialHint::Decay::Gaussian, 1.5, std::min(1.0, g.width / scale_), 0.0};
                        },
                        [](const Grid& g) {
                          return RadialHint{RadialHint::Decay::Compact, 0.5, 1.0, g.samples->kmax};
                        },
                        [](const Analytic& an) { return an.hint; },
                    },
                    family_);
}

PhotonState saturator_single(int m, double a, int n, int helicity, AxisVector axis) {
  return PhotonState(PhotonState::SaturatorSingle{m, n}, a, helicity, std::move(axis));
}

PhotonState saturator_beam(int m, double a, int n, int helicity, AxisVector axis) {
  return PhotonState(PhotonState::SaturatorBeam{m, n}, a, helicity, std::move(axis));
}

PhotonState trial_state(int base_m, std::vector<double> coeffs, double a, bool strict) {
  if (strict && coeffs.size() > 6) {
    throw DomainError("trial polynomial limited to six coefficients");
  }
  return PhotonState(PhotonState::TrialPoly{base_m, std::move(coeffs)}, a, 1, AxisVector::z());
}

PhotonState gaussian_1d(double width, double a, int helicity, AxisVector axis) {
  return PhotonState(PhotonState::Gaussian1D{width}, a, helicity, std::move(axis));
}

PhotonState grid_state(SampledGrid grid, double a, int helicity, AxisVector axis) {
  return PhotonState(build_grid(std::move(grid)), a, helicity, std::move(axis));
}

PhotonState superpose(const std::vector<std::pair<cd, PhotonState>>& terms) {
  if (terms.empty()) {
    throw DomainError("superpose: no terms");
  }
  const PhotonState& first = terms.front().second;
  RadialHint hint = first.radial_hint();
  for (const auto& [c, st] : terms) {
    if (st.helicity() != first.helicity() || (st.axis().n() - first.axis().n()).norm() > 1e-14) {
      throw DomainError("superpose: terms must share helicity and axis");
    }
    hint.power = std::min(hint.power, st.radial_hint().power);
  }
  auto copy = std::make_shared<const std::vector<std::pair<cd, PhotonState>>>(terms);
  PhotonState::Analytic an;
  an.hint = hint;
  an.label = "superposition";
  an.fn = [copy](double k, double theta, double phi) {
    ModeSample acc;
    for (const auto& [c, st] : *copy) {
      const ModeSample s = st.sample(k, theta, phi);
      acc.f += c * s.f;
      acc.df_dk += c * s.df_dk;
      acc.df_dtheta += c * s.df_dtheta;
      acc.df_dphi += c * s.df_dphi;
    }
    return acc;
  };
  return PhotonState(std::move(an), first.scale(), first.helicity(), first.axis());
}

SampledGrid sample_to_grid(const PhotonState& state, double kmax, int nk, int ntheta, int nphi) {
  SampledGrid g;
  g.kmax = kmax;
  g.nk = nk;
  g.ntheta = ntheta;
  g.nphi = nphi;
  g.values.resize(static_cast<std::size_t>(nk) * ntheta * nphi);
  for (int ik = 0; ik < nk; ++ik) {
    const double k = kmax * ik / (nk - 1);
    for (int it = 0; it < ntheta; ++it) {
      const double theta = kPi * it / (ntheta - 1);
      for (int ip = 0; ip < nphi; ++ip) {
        const double phi = 2.0 * kPi * ip / nphi;
        g.values[g.index(ik, it, ip)] = ik == 0 ? cd{0.0, 0.0} : state.sample(k, theta, phi).f;
      }
    }
  }
  return g;
}

double saturator_single_norm() { return single_norm_constant(0); }

double saturator_beam_norm() { return beam_norm_constant(0); }

CVec3 saturator_vector_field(const MomentumPoint& k, double a, const AxisVector& n) {
  const Vec3& kv = k.cartesian;
  const Vec3 nxk = n.n().cross(kv);
  const double len = nxk.norm();
  if (len < kAxisExclusion * k.k) {
    throw VortexLineError("saturator_vector_field: k on the vortex line");
  }
  const double kappa = a * k.k;
  const double radial = saturator_single_norm() * a * std::pow(kappa, kGammaSingle - 1.0) * std::exp(-0.5 * kappa * kappa);
  const Vec3 re = kv.cross(nxk) / (k.k * len);
  const Vec3 im = nxk / len;
  return radial * (re.cast<cd>() + kI * im.cast<cd>());
}

std::array<cd, 3> project_vector_field(const CVec3& field, const AxisVector& n) {
  // Eigen's dot conjugates its left operand; the axis vectors are real.
  const cd fx = n.e1().cast<cd>().dot(field);
  const cd fy = n.e2().cast<cd>().dot(field);
  const cd fz = n.n().cast<cd>().dot(field);
  return {(fx - kI * fy) / kSqrt2, fz, -(fx + kI * fy) / kSqrt2};
}

} // namespace photon
