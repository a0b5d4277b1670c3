#pragma once

#include <numbers>

namespace handkit {

// Files and CLI flags carry degrees and millimetres; everything in memory is
// radians and millimetres.

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace handkit
