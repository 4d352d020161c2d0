#include "photon/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "integrand.hpp"
#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"

namespace photon {

using detail::kI;

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             double scale, double tolerance, int max_evaluations) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  if (n == 0) {
    res.x = x0;
    res.value = f(x0);
    res.evaluations = 1;
    res.converged = true;
    return res;
  }
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += scale;
  }
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  for (std::size_t i = 0; i <= n; ++i) {
    vals[i] = eval(pts[i]);
  }
  std::vector<std::size_t> order(n + 1);
  auto combine = [&](const std::vector<double>& c, const std::vector<double>& p, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = c[i] + t * (p[i] - c[i]);
    }
    return out;
  };
  bool converged = false;
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        d = std::max(d, std::abs(pts[i][k] - pts[best][k]));
      }
      diameter = std::max(diameter, d);
    }
    if (diameter < tolerance) {
      converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) {
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        centroid[k] += pts[i][k] / static_cast<double>(n);
      }
    }
    const auto refl = combine(centroid, pts[worst], -1.0);
    const double fr = eval(refl);
    if (fr < vals[best]) {
      const auto exp = combine(centroid, pts[worst], -2.0);
      const double fe = eval(exp);
      if (fe < fr) {
        pts[worst] = exp;
        vals[worst] = fe;
      } else {
        pts[worst] = refl;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = refl;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const auto con = outside ? combine(centroid, refl, 0.5) : combine(centroid, pts[worst], 0.5);
    const double fc = eval(con);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = con;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) {
        continue;
      }
      pts[i] = combine(pts[best], pts[i], 0.5);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

NelderMeadResult minimize_with_restarts(const std::function<double(const std::vector<double>&)>& f,
                                        const std::vector<double>& x0, const OptimizerSettings& settings) {
  if (settings.restarts < 1 || !(settings.tolerance > 0.0) || settings.max_evaluations < 1) {
    throw DomainError("optimizer settings: need restarts >= 1, tolerance > 0, max_evaluations >= 1");
  }
  NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  int total = 0;
  for (int r = 0; r < settings.restarts; ++r) {
    std::vector<double> start = x0;
    if (r > 0) {
      const std::uint64_t seed = settings.seeds.empty() ? 0 : settings.seeds[r % settings.seeds.size()] + r;
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> jitter(0.0, settings.simplex_scale);
      for (double& v : start) {
        v += jitter(rng);
      }
    }
    auto run = nelder_mead(f, start, settings.simplex_scale, settings.tolerance, settings.max_evaluations);
    total += run.evaluations;
    if (run.value < best.value) {
      best = run;
    }
  }
  best.evaluations = total;
  return best;
}

TrialFamily::TrialFamily(int max_order, QuadratureOrders orders) : max_order_(max_order) {
  if (max_order < 0 || max_order > 12) {
    throw DomainError("TrialFamily: order must lie in [0, 12]");
  }
  const PhotonState base = saturator_single(1);
  orders.nk = std::max(orders.nk, max_order + 8);
  orders.ntheta = std::max(orders.ntheta, max_order + 8);
  const QuadratureScheme scheme = default_scheme(base, orders);
  const int dim = max_order + 1;
  std::vector<CompensatedSum> sn(dim * dim), sr(dim * dim), sp(dim * dim), sz(dim * dim);
  std::vector<double> upow(dim);
  std::vector<std::array<cd, 3>> v(dim);
  detail::for_each_node(base, scheme, [&](const detail::Node& n) {
    const ModeSample g = detail::to_g(n.s, n.k);
    const auto d = detail::covariant_components(g, n.k, n.sin_t, 1, n.cos_t);
    const double u = n.k * n.cos_t;
    const double w = n.weight * n.k * n.k;
    const double dens = std::norm(g.f);
    for (int i = 0; i < dim; ++i) {
      upow[i] = i == 0 ? 1.0 : upow[i - 1] * u;
      // D(g u^i) = u^i D g + i u^{i-1} g z_hat, z_hat = (cos, -sin, 0) in (r, theta, phi).
      const cd lift = i == 0 ? cd{0.0, 0.0} : static_cast<double>(i) * upow[i - 1] * g.f;
      v[i] = {upow[i] * d.r + lift * n.cos_t, upow[i] * d.t - lift * n.sin_t, upow[i] * d.p};
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const double uu = upow[i] * upow[j];
        const int idx = i * dim + j;
        sn[idx].add(w * dens * uu);
        sp[idx].add(w * n.k * n.k * dens * uu);
        sz[idx].add(w * u * dens * uu);
        sr[idx].add(w * std::real(std::conj(v[i][0]) * v[j][0] + std::conj(v[i][1]) * v[j][1] +
                                  std::conj(v[i][2]) * v[j][2]));
      }
    }
  });
  auto to_matrix = [&](const std::vector<CompensatedSum>& s) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        m(i, j) = s[i * dim + j].value();
      }
    }
    return Eigen::MatrixXd(0.5 * (m + m.transpose()));
  };
  norm_ = to_matrix(sn);
  rr_ = to_matrix(sr);
  pp_ = to_matrix(sp);
  pz_ = to_matrix(sz);
}

TrialFamily::Moments TrialFamily::moments(const std::vector<double>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > max_order_) {
    throw DomainError("TrialFamily: more coefficients than the precomputed order");
  }
  const int dim = static_cast<int>(coeffs.size()) + 1;
  Eigen::VectorXd c(dim);
  c(0) = 1.0;
  for (int i = 1; i < dim; ++i) {
    c(i) = coeffs[i - 1];
  }
  auto form = [&](const Eigen::MatrixXd& m) { return c.dot(m.topLeftCorner(dim, dim) * c); };
  return {form(norm_), form(rr_), form(pp_), form(pz_)};
}

double TrialFamily::variance_product(const std::vector<double>& coeffs) const {
  const Moments m = moments(coeffs);
  const double pz = m.Pz / m.norm;
  return (m.RR / m.norm) * (m.PP / m.norm - pz * pz);
}

double TrialFamily::mean_P2(const std::vector<double>& coeffs) const {
  const Moments m = moments(coeffs);
  const double pz = m.Pz / m.norm;
  return pz * pz;
}

VariationalRun minimize_variance_product(int order, const TrialFamily& family, const OptimizerSettings& settings,
                                         const std::vector<double>& warm) {
  if (order < 0 || order > family.max_order()) {
    throw DomainError("minimize_variance_product: order outside the precomputed family");
  }
  std::vector<double> x0(order, 0.0);
  for (std::size_t i = 0; i < std::min(warm.size(), x0.size()); ++i) {
    x0[i] = warm[i];
  }
  auto objective = [&](const std::vector<double>& a) { return family.variance_product(a); };
  const auto best = minimize_with_restarts(objective, x0, settings);
  VariationalRun run;
  run.order = order;
  run.coefficients = best.x;
  run.variance_product = best.value;
  run.mean_P2 = family.mean_P2(best.x);
  run.iterations = best.evaluations;
  run.converged = best.converged;
  return run;
}

std::vector<VariationalRun> figure1_sweep(const std::vector<int>& orders, const TrialFamily& family,
                                          const OptimizerSettings& settings) {
  if (orders.empty()) {
    return {};
  }
  for (int q : orders) {
    if (q < 0 || q > family.max_order()) {
      throw DomainError("figure1_sweep: orders must lie in [0, max_order]");
    }
  }
  const int top = *std::max_element(orders.begin(), orders.end());
  std::vector<VariationalRun> all;
  std::vector<double> warm;
  for (int q = 0; q <= top; ++q) {
    all.push_back(minimize_variance_product(q, family, settings, warm));
    warm = all.back().coefficients;
  }
  std::vector<VariationalRun> out;
  for (int q : orders) {
    out.push_back(all[q]);
  }
  return out;
}

double fit_eval(double p2) {
  if (!(p2 >= 0.0)) {
    throw DomainError("fit_eval: p2 must be nonnegative");
  }
  if (std::isinf(p2)) {
    return 2.25;
  }
  return 2.25 + kSqrt5 / (1.0 + 1.14 * p2 + 0.8 * p2 * p2);
}

double exact_endpoint() { return 2.25 + kSqrt5; }

PhotonState imf_trial_state(double power, double width, double shift, bool limit, int helicity) {
  if (!(power >= 0.0) || !(width > 0.0) || !(shift >= 0.0)) {
    throw DomainError("imf_trial_state: need power >= 0, width > 0, shift >= 0");
  }
  PhotonState::Analytic an;
  an.label = "imf-trial";
  an.hint = RadialHint{RadialHint::Decay::Gaussian, power + 0.5, 1.0 / width, 0.0};
  const double lam = helicity;
  an.fn = [=](double k, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double e = std::exp(-0.5 * k * k / (width * width));
    const double rad = std::pow(k, power + 0.5) * e;
    const double drad = std::pow(k, power - 0.5) * e * ((power + 0.5) - k * k / (width * width));
    double ang = 1.0, dang_k = 0.0, dang_t = 0.0;
    if (!limit) {
      const double r = std::sqrt(k * k + 2.0 * k * shift * c + shift * shift);
      if (r > 0.0) {
        const double r3 = r * r * r;
        ang = 0.5 * (1.0 + (k * c + shift) / r);
        dang_k = -0.5 * shift * k * s * s / r3;
        dang_t = -0.5 * k * k * s * (k + shift * c) / r3;
      } else {
        ang = 0.5;
      }
    }
    const cd phase = std::exp(kI * (lam * phi));
    ModeSample out;
    out.f = rad * ang * phase;
    out.df_dk = (drad * ang + rad * dang_k) * phase;
    out.df_dtheta = rad * dang_t * phase;
    out.df_dphi = kI * lam * out.f;
    return out;
  };
  return PhotonState(std::move(an), 1.0, helicity, AxisVector::z());
}

namespace {

// The shifted functional is not scale invariant: only shift * width matters.
// The width is therefore pinned to the unit scale and only the power, in
// [0, 3], is searched.
ImfPoint minimize_imf(double shift, bool limit, const OptimizerSettings& settings, QuadratureOrders orders) {
  const Connection conn = limit ? Connection::infinite_momentum() : Connection::shifted(shift);
  auto objective = [&](double power) {
    const PhotonState st = imf_trial_state(power, 1.0, shift, limit);
    return expectation_report(st, default_scheme(st, orders), conn).gamma2;
  };
  std::uintmax_t iterations = static_cast<std::uintmax_t>(settings.max_evaluations);
  const auto [power, value] = boost::math::tools::brent_find_minima(objective, 0.0, 3.0, 40, iterations);
  ImfPoint p;
  p.shift = shift;
  p.gamma2 = value;
  p.power = power;
  p.width = 1.0;
  p.converged = iterations < static_cast<std::uintmax_t>(settings.max_evaluations);
  return p;
}

} // namespace

ImfPoint imf_exact_minimum(const OptimizerSettings& settings, QuadratureOrders orders) {
  return minimize_imf(std::numeric_limits<double>::infinity(), true, settings, orders);
}

ImfResult imf_limit(const std::vector<double>& shifts, const OptimizerSettings& settings, QuadratureOrders orders) {
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (!(shifts[i] >= 0.0) || (i > 0 && !(shifts[i] > shifts[i - 1]))) {
      throw DomainError("imf_limit: shifts must be nonnegative and increasing");
    }
  }
  ImfResult out;
  for (double s : shifts) {
    out.series.push_back(minimize_imf(s, false, settings, orders));
  }
  const std::size_t n = out.series.size();
  out.extrapolated = n ? out.series.back().gamma2 : 0.0;
  if (n >= 3) {
    const double x1 = out.series[n - 3].gamma2, x2 = out.series[n - 2].gamma2, x3 = out.series[n - 1].gamma2;
    const double d1 = x2 - x1, d2 = x3 - x2;
    if (std::abs(d2 - d1) > 1e-14 && d1 != 0.0 && d2 / d1 > 0.0 && d2 / d1 < 1.0) {
      out.extrapolated = x3 - d2 * d2 / (d2 - d1);
    }
  }
  out.limit = imf_exact_minimum(settings, orders);
  return out;
}

} // namespace photon
