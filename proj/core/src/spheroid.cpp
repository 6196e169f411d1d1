#include "geodivp/spheroid.hpp"

#include <cmath>
#include <string>

#include "geodivp/angles.hpp"
#include "geodivp/errors.hpp"

namespace geodivp {

Ellipsoid::Ellipsoid(double a, double f) : a_(a), f_(f) {
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw ConstructionError("a", "semiaxis must be finite and positive, got " + std::to_string(a));
  }
  if (!std::isfinite(f) || !(f >= 0.0 && f < 1.0)) {
    throw ConstructionError("f", "flattening must lie in [0, 1), got " + std::to_string(f));
  }
  e2_ = f * (2.0 - f);
  one_minus_e2_ = 1.0 - e2_;
  b_ = a * std::sqrt(one_minus_e2_);
}

Ellipsoid make_ellipsoid(double a, double f) { return Ellipsoid(a, f); }

GeodeticCoord GeodeticCoord::checked(double lat, double lon) {
  if (!std::isfinite(lat) || std::abs(lat) > 90.0) {
    throw ConstructionError("lat", "latitude must lie in [-90, 90], got " + std::to_string(lat));
  }
  if (!std::isfinite(lon)) {
    throw ConstructionError("lon", "longitude must be finite");
  }
  return {lat, wrap_lon(lon)};
}

double prime_vertical_radius(const Ellipsoid& ell, double lat) {
  const double s = std::sin(lat);
  return ell.a() / std::sqrt(1.0 - ell.e2() * s * s);
}

double meridian_radius(const Ellipsoid& ell, double lat) {
  const double s = std::sin(lat);
  const double w2 = 1.0 - ell.e2() * s * s;
  return ell.a() * ell.ep() / (w2 * std::sqrt(w2));
}

CartesianCoord geodetic_to_cartesian(const Ellipsoid& ell, GeodeticCoord g) {
  const auto [sphi, cphi] = sincosd(g.lat);
  const auto [slam, clam] = sincosd(g.lon);
  const double n = ell.a() / std::sqrt(1.0 - ell.e2() * sphi * sphi);
  return {n * cphi * clam, n * cphi * slam, n * ell.ep() * sphi};
}

GeodeticCoord cartesian_to_geodetic(const Ellipsoid& ell, CartesianCoord c) {
  const double residual = surface_residual(ell, c);
  if (!(std::abs(residual) <= 1e-6)) {
    throw DomainError("point is not on the ellipsoid surface (normalized residual " +
                      std::to_string(residual) + ")");
  }
  const double p = std::hypot(c.x, c.y);
  if (p == 0.0) {
    return {c.z >= 0.0 ? 90.0 : -90.0, 0.0};
  }
  // Exact for on-surface points; the iteration absorbs small radial offsets.
  double lat = std::atan2(c.z, ell.ep() * p);
  for (int i = 0; i < 10; ++i) {
    const double s = std::sin(lat);
    const double n = ell.a() / std::sqrt(1.0 - ell.e2() * s * s);
    const double next = std::atan2(c.z + ell.e2() * n * s, p);
    const double delta = std::abs(next - lat);
    lat = next;
    if (delta < 1e-15) break;
  }
  return {rad_to_deg(lat), wrap_lon(rad_to_deg(std::atan2(c.y, c.x)))};
}

double surface_residual(const Ellipsoid& ell, CartesianCoord c) {
  const double x = c.x / ell.a();
  const double y = c.y / ell.a();
  const double z = c.z / ell.a();
  return (x * x + y * y) + z * z / ell.ep() - 1.0;
}

}  // namespace geodivp
