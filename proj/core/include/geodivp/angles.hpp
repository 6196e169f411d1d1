#pragma once

#include <cmath>
#include <numbers>

namespace geodivp {

inline constexpr double kDegree = std::numbers::pi / 180.0;
inline constexpr double kArcsecPerDegree = 3600.0;

inline double deg_to_rad(double deg) { return deg * kDegree; }
inline double rad_to_deg(double rad) { return rad / kDegree; }

/// Precomputed sine and cosine of a direction angle.
struct SinCos {
  double sin;
  double cos;
};

inline SinCos sincos_rad(double rad) { return {std::sin(rad), std::cos(rad)}; }

/// sin and cos of an angle in degrees, with the argument reduced exactly to
/// [-45, 45] first. Quadrant results are exact (cos 90 == 0, sin 180 == 0) and
/// sincosd(180 - x) mirrors sincosd(x) bit for bit whenever 180 - x is exact.
inline SinCos sincosd(double deg) {
  double r = std::fmod(deg, 360.0);
  int q = static_cast<int>(std::lround(r / 90.0));
  r -= 90.0 * q;  // exact
  r *= kDegree;
  const double s = std::sin(r);
  const double c = std::cos(r);
  double sinx = 0.0;
  double cosx = 0.0;
  switch (static_cast<unsigned>(q) & 3U) {
    case 0U: sinx = s; cosx = c; break;
    case 1U: sinx = c; cosx = -s; break;
    case 2U: sinx = -s; cosx = -c; break;
    default: sinx = -c; cosx = s; break;
  }
  // fold -0 into +0
  return {sinx + 0.0, cosx + 0.0};
}

/// Longitude folded into (-180, 180].
inline double wrap_lon(double deg) {
  double r = std::remainder(deg, 360.0);  // [-180, 180]
  return r <= -180.0 ? r + 360.0 : r;
}

/// Azimuth folded into [0, 360).
inline double wrap_azimuth(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  return r >= 360.0 ? 0.0 : r + 0.0;
}

/// Minimal signed difference a - b in degrees, in [-180, 180].
inline double angle_diff(double a, double b) { return std::remainder(a - b, 360.0); }

}  // namespace geodivp
