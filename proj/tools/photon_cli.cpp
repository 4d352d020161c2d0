#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "photon/beams.hpp"
#include "photon/constants.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"
#include "photon/spectra.hpp"
#include "photon/state_io.hpp"
#include "photon/states.hpp"
#include "photon/variational.hpp"

using namespace photon;
using json = nlohmann::json;

namespace {

enum Exit : int {
  kOk = 0,
  kBadInput = 2,
  kVerificationFailed = 3,
  kNotConverged = 4,
  kInvalidState = 5,
  kDivergent = 6,
};

struct RunConfig {
  std::string format = "table";
  std::optional<int> nk, ntheta, nphi;
  double a = 1.0;
  std::vector<std::uint64_t> seeds;
  int restarts = 5;
  double tolerance = 1e-9;
  int max_evals = 20000;
  std::string out;

  QuadratureOrders orders(QuadratureOrders base = {}) const {
    if (nk) base.nk = *nk;
    if (ntheta) base.ntheta = *ntheta;
    if (nphi) base.nphi = *nphi;
    return base;
  }

  OptimizerSettings optimizer() const {
    OptimizerSettings s;
    s.restarts = restarts;
    s.tolerance = tolerance;
    s.max_evaluations = max_evals;
    if (!seeds.empty()) s.seeds = seeds;
    return s;
  }
};

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string cell(const json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number()) return number(v.get<double>());
  if (v.is_null()) return "";
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// Rows of named values, rendered as CSV, an aligned table or a JSON array.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  /// A single report rather than a list of rows; JSON output is one object.
  bool record = false;

  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json o;
      for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
      arr.push_back(o);
    }
    return record && arr.size() == 1 ? arr[0] : arr;
  }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      os << to_json().dump(2) << '\n';
      return;
    }
    std::vector<std::vector<std::string>> text;
    text.push_back(columns);
    for (const auto& r : rows) {
      std::vector<std::string> t;
      for (const auto& v : r) t.push_back(cell(v));
      text.push_back(t);
    }
    if (format == "csv") {
      for (const auto& t : text) {
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
        os << '\n';
      }
      return;
    }
    std::vector<std::size_t> width(columns.size(), 0);
    for (const auto& t : text)
      for (std::size_t i = 0; i < t.size(); ++i) width[i] = std::max(width[i], t[i].size());
    for (const auto& t : text) {
      for (std::size_t i = 0; i < t.size(); ++i) {
        os << (i ? "  " : "") << std::string(width[i] - t[i].size(), ' ') << t[i];
      }
      os << '\n';
    }
  }
};

Table from_object(const json& obj) {
  Table t;
  t.record = true;
  t.rows.emplace_back();
  for (const auto& [k, v] : obj.items()) {
    t.columns.push_back(k);
    t.rows.back().push_back(v);
  }
  return t;
}

void emit(const Table& t, const RunConfig& cfg, const std::string& path = "") {
  const std::string target = path.empty() ? cfg.out : path;
  if (target.empty()) {
    t.write(std::cout, cfg.format);
    return;
  }
  std::ofstream f(target);
  if (!f) throw std::runtime_error("cannot write '" + target + "'");
  // Files get machine-readable output even when the terminal format is a table.
  t.write(f, cfg.format == "table" ? "csv" : cfg.format);
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& system_name, int nmax, int jmax, const RunConfig& cfg) {
  const SpectralSystem system = parse_system(system_name);
  if (nmax < 0 || jmax < 0) throw DomainError("--nmax and --jmax must be nonnegative");
  const int jmin = system == SpectralSystem::InfiniteMomentum ? 0 : 1;
  if (jmax < jmin) throw ForbiddenQuantumNumbers("no allowed j up to --jmax for system " + system_name);
  Table t{{"system", "n", "j", "gamma", "gamma_shooting", "abs_diff"}, {}};
  int status = kOk;
  for (const auto& lvl : spectrum_table(system, nmax, jmax)) {
    double shot = std::nan("");
    try {
      shot = shoot_eigenvalue(system, lvl.j, lvl.n);
    } catch (const std::runtime_error& e) {
      std::cerr << "shooting failed for n=" << lvl.n << " j=" << lvl.j << ": " << e.what() << '\n';
      status = kNotConverged;
    }
    const double diff = std::abs(shot - lvl.gamma);
    if (status == kOk && !(diff <= 1e-6)) status = kVerificationFailed;
    t.rows.push_back({to_string(system), lvl.n, lvl.j, lvl.gamma, shot, diff});
  }
  emit(t, cfg);
  return status;
}

// ------------------------------------------------------- verify-saturators

int cmd_verify(const std::string& system_name, const RunConfig& cfg) {
  const SpectralSystem system = parse_system(system_name);
  if (system == SpectralSystem::InfiniteMomentum) throw DomainError("verify-saturators supports single and beam");
  if (!(cfg.a > 0.0)) throw DomainError("--a must be positive");
  const bool beam = system == SpectralSystem::Beam;
  const double gamma = gamma_spectrum(system, 0, 1);
  const double expected = gamma * gamma;
  const double mean_p_oracle = std::tgamma(1.5 + 0.5 * kSqrt5) / (2.0 * std::tgamma(1.0 + 0.5 * kSqrt5));
  const RadialProfile profile = radial_solution(system, 0, 1);
  const double radial = radial_residual(system, profile, gamma, 1, default_residual_samples());

  Table t{{"system", "m", "norm", "gamma2", "expected", "rel_diff", "mean_P", "equipartition", "radial_residual",
           "angular_residual", "pass"},
          {}};
  bool all = true;
  for (int m : {-1, 0, 1}) {
    const PhotonState st = beam ? saturator_beam(m, cfg.a) : saturator_single(m, cfg.a);
    const QuadratureScheme scheme = default_scheme(st, cfg.orders());
    const ExpectationReport rep = expectation_report(st, scheme);
    double g2 = rep.gamma2;
    double equip = rep.RR / (rep.PP * std::pow(cfg.a, 4));
    if (beam) {
      const BeamReport br = beam_gamma2(st, scheme);
      g2 = br.gamma2;
      equip = br.kappa_scale / cfg.a;
    }
    const double mean_p = rep.mean_P.z() * cfg.a;
    const double angular = angular_residual(1, m, 1, system);
    const double rel = std::abs(g2 / expected - 1.0);
    bool pass = rel <= 1e-6 && radial <= 1e-6 && angular <= 1e-6 && std::abs(rep.norm - 1.0) <= 1e-6;
    if (!beam) {
      pass = pass && std::abs(equip - 1.0) <= 1e-8 && std::abs(std::abs(mean_p) - std::abs(m) * mean_p_oracle) <= 1e-3;
    }
    all = all && pass;
    t.rows.push_back({system_name, m, rep.norm, g2, expected, rel, mean_p, equip, radial, angular, pass});
  }
  emit(t, cfg);
  if (!all) std::cerr << "verification failed\n";
  return all ? kOk : kVerificationFailed;
}

// ------------------------------------------------------------------- sweep

std::string fit_path_for(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "_fit.csv";
  return out.substr(0, dot) + "_fit" + out.substr(dot);
}

int cmd_sweep(const std::vector<int>& orders, std::string fit_out, const RunConfig& cfg) {
  if (orders.empty()) throw DomainError("--orders is empty");
  for (int q : orders)
    if (q < 0 || q > 6) throw DomainError("orders must lie in 0..6");
  const int top = *std::max_element(orders.begin(), orders.end());
  const TrialFamily family(std::max(top, 1), cfg.orders({32, 24, 8}));
  const auto runs = figure1_sweep(orders, family, cfg.optimizer());
  const double a2 = cfg.a * cfg.a;

  Table dots{{"order", "mean_P2", "variance_product", "converged"}, {}};
  dots.rows.push_back({"exact", 0.0, exact_endpoint(), true});
  bool converged = true;
  double worst = 0.0;
  double p2_max = 0.0;
  for (const auto& r : runs) {
    dots.rows.push_back({std::to_string(r.order), r.mean_P2 / a2, r.variance_product, r.converged});
    converged = converged && r.converged;
    worst = std::max(worst, std::abs(r.variance_product - fit_eval(r.mean_P2)));
    p2_max = std::max(p2_max, r.mean_P2);
  }
  emit(dots, cfg);

  if (fit_out.empty() && !cfg.out.empty()) fit_out = fit_path_for(cfg.out);
  if (!fit_out.empty()) {
    Table fit{{"mean_P2", "fit"}, {}};
    const double span = std::max(5.0, 1.1 * p2_max);
    for (int i = 0; i < 200; ++i) {
      const double p2 = span * i / 199.0;
      fit.rows.push_back({p2 / a2, fit_eval(p2)});
    }
    emit(fit, cfg, fit_out);
  }
  std::cerr << "max |dot - fit| = " << number(worst) << '\n';
  if (!converged) {
    std::cerr << "optimizer did not converge for every order\n";
    return kNotConverged;
  }
  return kOk;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& path, const std::string& system_name, bool one_dim, const RunConfig& cfg) {
  std::optional<PhotonState> st;
  try {
    st.emplace(load_state(path));
  } catch (const DomainError& e) {
    throw StateFormatError(e.what());
  }
  const QuadratureScheme scheme = default_scheme(*st, cfg.orders());
  if (one_dim) {
    const double prod = one_dimensional_product(*st, st->axis(), scheme);
    emit(from_object({{"one_dimensional_product", prod}}), cfg);
    return kOk;
  }
  bool divergent = false;
  if (parse_system(system_name) == SpectralSystem::Beam) {
    const BeamReport rep = beam_gamma2(*st, scheme);
    divergent = rep.divergent;
    emit(from_object(to_json(rep)), cfg);
  } else {
    const ExpectationReport rep = expectation_report(*st, scheme);
    divergent = rep.divergent;
    if (cfg.format == "json") {
      emit(from_object(to_json(rep)), cfg);
    } else {
      emit(Table{{"norm", "mean_R_x", "mean_R_y", "mean_R_z", "RR", "mean_P_x", "mean_P_y", "mean_P_z", "PP", "varR",
                  "varP", "gamma2", "variance_product"},
                 {{rep.norm, rep.mean_R.x(), rep.mean_R.y(), rep.mean_R.z(), rep.RR, rep.mean_P.x(), rep.mean_P.y(),
                   rep.mean_P.z(), rep.PP, rep.varR, rep.varP, rep.gamma2, rep.variance_product}},
                 true},
           cfg);
    }
  }
  if (divergent) {
    std::cerr << "warning: <R.R> diverges near the axis; the reported values are not meaningful\n";
    return kDivergent;
  }
  return kOk;
}

// --------------------------------------------------------------------- imf

int cmd_imf(const std::vector<double>& shifts, const RunConfig& cfg) {
  const ImfResult res = imf_limit(shifts, cfg.optimizer(), cfg.orders({32, 48, 4}));
  Table t{{"kind", "shift", "gamma2", "power", "converged"}, {}};
  bool ok = res.limit.converged;
  for (const auto& p : res.series) {
    t.rows.push_back({"shift", p.shift, p.gamma2, p.power, p.converged});
    ok = ok && p.converged;
  }
  t.rows.push_back({"extrapolated", json(), res.extrapolated, json(), true});
  t.rows.push_back({"limit", json(), res.limit.gamma2, res.limit.power, res.limit.converged});
  emit(t, cfg);
  return ok ? kOk : kNotConverged;
}

// ------------------------------------------------------------------- focal

int cmd_focal(std::optional<double> var_r, std::optional<double> var_p, double gamma_bound,
              const std::string& state_path, const RunConfig& cfg) {
  if (!state_path.empty()) {
    const PhotonState st = load_state(state_path);
    const BeamReport rep = beam_gamma2(st, default_scheme(st, cfg.orders()), gamma_bound);
    if (!var_r) var_r = rep.dispersionR;
    if (!var_p) var_p = rep.dispersionP;
  }
  if (!var_r || !var_p) throw DomainError("focal needs --varR and --varP, or --state");
  const FocalReport rep = focal_volume_report(*var_r, *var_p, gamma_bound);
  emit(Table{{"varR", "varP", "gamma_bound", "V_f", "V_min", "ratio", "satisfied"},
             {{*var_r, *var_p, gamma_bound, rep.V_f, rep.V_min, rep.V_f / rep.V_min, rep.satisfied}},
             true},
       cfg);
  if (!rep.satisfied) std::cerr << "note: V_f is below the bound for these inputs\n";
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon uncertainty relations: spectra, saturators, variational sweeps, beams"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags; flags win");

  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--nk", cfg.nk, "Radial quadrature order")->check(CLI::Range(4, 200));
    sub->add_option("--ntheta", cfg.ntheta, "Polar quadrature order")->check(CLI::Range(4, 400));
    sub->add_option("--nphi", cfg.nphi, "Azimuthal quadrature order")->check(CLI::Range(4, 400));
    sub->add_option("--a", cfg.a, "Length scale a");
    sub->add_option("--seed-list", cfg.seeds, "Optimizer restart seeds")->delimiter(',');
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", cfg.tolerance, "Optimizer simplex tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-evals", cfg.max_evals, "Optimizer evaluation budget")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Write data here instead of stdout");
  };

  std::string system = "single";
  int nmax = 3, jmax = 3;
  auto* spectrum = app.add_subcommand("spectrum", "Closed-form levels with a shooting cross-check");
  common(spectrum);
  spectrum->add_option("--system", system, "single, beam or imf");
  spectrum->add_option("--nmax", nmax, "Largest radial quantum number");
  spectrum->add_option("--jmax", jmax, "Largest angular momentum");

  auto* verify = app.add_subcommand("verify-saturators", "Quadrature checks of the m = -1, 0, 1 saturators");
  common(verify);
  verify->add_option("--system", system, "single or beam");

  std::vector<int> orders{0, 1, 2, 3, 4, 5, 6};
  std::string fit_out;
  auto* sweep = app.add_subcommand("sweep", "Variance product against mean momentum for the polynomial trials");
  common(sweep);
  sweep->add_option("--orders", orders, "Polynomial orders")->delimiter(',');
  sweep->add_option("--fit-out", fit_out, "Fit curve CSV (default: next to --out)");

  std::string state_file;
  bool one_dim = false;
  auto* evaluate = app.add_subcommand("evaluate", "Report for a state description file");
  common(evaluate);
  evaluate->add_option("state", state_file, "State description (JSON)")->required();
  evaluate->add_option("--system", system, "single or beam functional");
  evaluate->add_flag("--one-dim", one_dim, "Delta X * Delta P along the state axis");

  std::vector<double> shifts{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  auto* imf = app.add_subcommand("imf", "Shifted-connection minimization toward the infinite-momentum limit");
  common(imf);
  imf->add_option("--shifts", shifts, "Increasing shifts in units of 1/a")->delimiter(',');

  std::optional<double> var_r, var_p;
  double gamma_bound = kGammaBeam;
  std::string focal_state;
  auto* focal = app.add_subcommand("focal", "Focal-volume bound");
  common(focal);
  focal->add_option("--varR", var_r, "Position dispersion");
  focal->add_option("--varP", var_p, "Momentum dispersion");
  focal->add_option("--gamma-bound", gamma_bound, "Lower bound on gamma");
  focal->add_option("--state", focal_state, "Take the dispersions from this beam state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*spectrum) return cmd_spectrum(system, nmax, jmax, cfg);
    if (*verify) return cmd_verify(system, cfg);
    if (*sweep) return cmd_sweep(orders, fit_out, cfg);
    if (*evaluate) return cmd_evaluate(state_file, system, one_dim, cfg);
    if (*imf) return cmd_imf(shifts, cfg);
    if (*focal) return cmd_focal(var_r, var_p, gamma_bound, focal_state, cfg);
  } catch (const StateFormatError& e) {
    std::cerr << "invalid state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const OutOfGridError& e) {
    std::cerr << "invalid state: " << e.what() << '\n';
    return kInvalidState;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
