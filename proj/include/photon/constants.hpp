#pragma once

#include <numbers>

namespace photon {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline const double kSqrt5 = 2.2360679774997896964;

/// Lowest single-photon eigenvalue gamma = 1 + sqrt5/2 (n = 0, j = 1).
inline const double kGammaSingle = 1.0 + 0.5 * kSqrt5;
/// Lowest beam eigenvalue gamma = 1/2 + sqrt2.
inline constexpr double kGammaBeam = 0.5 + std::numbers::sqrt2;
/// Nonrelativistic (infinite-momentum) bound 3/2 in three dimensions.
inline constexpr double kGammaInfiniteMomentum = 1.5;

} // namespace photon
