#pragma once

#include <cmath>

namespace geodivp {

/// Ellipsoid of revolution with semiaxis a and flattening f.
class Ellipsoid {
 public:
  /// Throws ConstructionError naming "a" or "f" on non-finite or out-of-range input.
  Ellipsoid(double a, double f);

  static Ellipsoid wgs84() { return Ellipsoid(6378137.0, 1.0 / 298.257223563); }

  double a() const noexcept { return a_; }
  double f() const noexcept { return f_; }
  double e2() const noexcept { return e2_; }
  double b() const noexcept { return b_; }
  /// 1 - e2, the factor that keeps recurring in the surface equation.
  double ep() const noexcept { return one_minus_e2_; }
  bool is_sphere() const noexcept { return f_ == 0.0; }

 private:
  double a_;
  double f_;
  double e2_;
  double b_;
  double one_minus_e2_;
};

Ellipsoid make_ellipsoid(double a, double f);

/// Geodetic latitude/longitude in degrees.
struct GeodeticCoord {
  double lat = 0.0;
  double lon = 0.0;

  /// Validates |lat| <= 90 and wraps lon into (-180, 180]. Throws ConstructionError.
  static GeodeticCoord checked(double lat, double lon);
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 u, Vec3 v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
  friend Vec3 operator-(Vec3 u, Vec3 v) { return {u.x - v.x, u.y - v.y, u.z - v.z}; }
  friend Vec3 operator*(double k, Vec3 v) { return {k * v.x, k * v.y, k * v.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 u, Vec3 v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline Vec3 cross(Vec3 u, Vec3 v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

/// Earth-centred Cartesian point (m).
using CartesianCoord = Vec3;

/// Radius of curvature in the prime vertical, N(lat). lat in radians.
double prime_vertical_radius(const Ellipsoid& ell, double lat);

/// Radius of curvature in the meridian, M(lat). lat in radians.
double meridian_radius(const Ellipsoid& ell, double lat);

CartesianCoord geodetic_to_cartesian(const Ellipsoid& ell, GeodeticCoord g);

/// Inverse of geodetic_to_cartesian for points on (or within 1e-6 of) the surface.
/// Returns lat = +-90, lon = 0 on the polar axis. Throws DomainError when the
/// normalized surface residual exceeds 1e-6.
GeodeticCoord cartesian_to_geodetic(const Ellipsoid& ell, CartesianCoord c);

/// (x^2 + y^2)/a^2 + z^2/(a^2 (1 - e2)) - 1; zero on the surface.
double surface_residual(const Ellipsoid& ell, CartesianCoord c);

}  // namespace geodivp
