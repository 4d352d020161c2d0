#include "photon/state_io.hpp"

#include <fstream>
#include <type_traits>

#include "photon/errors.hpp"

namespace photon {

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) {
    throw StateFormatError(std::string("missing field '") + key + "'");
  }
  return field<T>(j, key, T{});
}

SampledGrid parse_grid(const nlohmann::json& g) {
  if (!g.is_object()) {
    throw StateFormatError("'grid' must be an object");
  }
  SampledGrid grid;
  grid.kmax = required<double>(g, "kmax");
  grid.nk = required<int>(g, "nk");
  grid.ntheta = required<int>(g, "ntheta");
  grid.nphi = required<int>(g, "nphi");
  const auto re = required<std::vector<double>>(g, "re");
  const auto im = field<std::vector<double>>(g, "im", std::vector<double>(re.size(), 0.0));
  if (re.size() != im.size()) {
    throw StateFormatError("grid 're' and 'im' differ in length");
  }
  grid.values.resize(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) {
    grid.values[i] = {re[i], im[i]};
  }
  return grid;
}

} // namespace

PhotonState state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw StateFormatError("state description must be a JSON object");
  }
  const auto family = required<std::string>(j, "family");
  const double a = field<double>(j, "a", 1.0);
  const int helicity = field<int>(j, "helicity", 1);
  Vec3 axis_v = Vec3::UnitZ();
  if (j.contains("axis")) {
    const auto v = field<std::vector<double>>(j, "axis", {});
    if (v.size() != 3) {
      throw StateFormatError("'axis' must have three components");
    }
    axis_v = Vec3(v[0], v[1], v[2]);
  }
  const AxisVector axis(axis_v);
  if (family == "saturator-single") {
    return saturator_single(required<int>(j, "m"), a, field<int>(j, "n", 0), helicity, axis);
  }
  if (family == "saturator-beam") {
    return saturator_beam(required<int>(j, "m"), a, field<int>(j, "n", 0), helicity, axis);
  }
  if (family == "trial-poly") {
    const int m = field<int>(j, "m", 1);
    auto coeffs = field<std::vector<double>>(j, "coeffs", {});
    return PhotonState(PhotonState::TrialPoly{m, std::move(coeffs)}, a, helicity, axis);
  }
  if (family == "gaussian-1d") {
    return gaussian_1d(field<double>(j, "width", 1.0), a, helicity, axis);
  }
  if (family == "grid") {
    if (!j.contains("grid")) {
      throw StateFormatError("grid family needs a 'grid' payload");
    }
    return grid_state(parse_grid(j.at("grid")), a, helicity, axis);
  }
  throw StateFormatError("unknown family '" + family + "'");
}

nlohmann::json state_to_json(const PhotonState& state) {
  nlohmann::json j;
  j["family"] = to_string(state.family());
  j["a"] = state.scale();
  j["helicity"] = state.helicity();
  const Vec3& n = state.axis().n();
  j["axis"] = {n.x(), n.y(), n.z()};
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PhotonState::SaturatorSingle> ||
                      std::is_same_v<T, PhotonState::SaturatorBeam>) {
          j["m"] = d.m;
          j["n"] = d.n;
        } else if constexpr (std::is_same_v<T, PhotonState::TrialPoly>) {
          j["m"] = d.base_m;
          j["coeffs"] = d.coeffs;
        } else if constexpr (std::is_same_v<T, PhotonState::Gaussian1D>) {
          j["width"] = d.width;
        } else if constexpr (std::is_same_v<T, PhotonState::Grid>) {
          const SampledGrid& g = *d.samples;
          std::vector<double> re(g.values.size()), im(g.values.size());
          for (std::size_t i = 0; i < g.values.size(); ++i) {
            re[i] = g.values[i].real();
            im[i] = g.values[i].imag();
          }
          j["grid"] = {{"kmax", g.kmax}, {"nk", g.nk}, {"ntheta", g.ntheta}, {"nphi", g.nphi}, {"re", re}, {"im", im}};
        } else {
          throw StateFormatError("analytic states have no file representation");
        }
      },
      state.details());
  return j;
}

PhotonState load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw StateFormatError("cannot open state file '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return state_from_json(j);
}

} // namespace photon
