#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "photon/states.hpp"

namespace photon {

/// Builds a state from its description:
///   {"family": "saturator-single" | "saturator-beam" | "trial-poly" | "gaussian-1d" | "grid",
///    "m": int, "a": float, "coeffs": [floats], "helicity": +-1,
///    "n": int (radial level, saturator families), "width": float (gaussian-1d),
///    "axis": [x, y, z],
///    "grid": {"kmax", "nk", "ntheta", "nphi", "re": [...], "im": [...]}}
/// Grid values are row-major in (k, theta, phi) with phi fastest. Throws
/// StateFormatError for malformed input and DomainError for invalid values.
PhotonState state_from_json(const nlohmann::json& j);

/// Inverse of `state_from_json` for every family except Analytic.
nlohmann::json state_to_json(const PhotonState& state);

/// Reads and parses a state file; throws StateFormatError when unreadable.
PhotonState load_state(const std::string& path);

} // namespace photon
