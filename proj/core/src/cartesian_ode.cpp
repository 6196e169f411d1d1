#include "geodivp/cartesian_ode.hpp"

#include <cmath>
#include <string>

#include "geodivp/errors.hpp"

namespace geodivp {

CurvatureScalars curvature_scalars(const Ellipsoid& ell, const CartesianState& st) {
  const double zr = st.z / ell.ep();
  return {st.x * st.x + st.y * st.y + zr * zr,
          st.xd * st.xd + st.yd * st.yd + st.zd * st.zd / ell.ep()};
}

StateVec<6> cartesian_rhs(const Ellipsoid& ell, const StateVec<6>& st) {
  const auto [x, xd, y, yd, z, zd] = st;
  const double zr = z / ell.ep();
  const double big_h = x * x + y * y + zr * zr;
  const double small_h = xd * xd + yd * yd + zd * zd / ell.ep();
  const double k = small_h / big_h;
  return {xd, -k * x, yd, -k * y, zd, -k * zr};
}

Vec3 surface_normal(const Ellipsoid& ell, CartesianCoord c) {
  const Vec3 g{c.x, c.y, c.z / ell.ep()};
  return (1.0 / norm(g)) * g;
}

Vec3 east_vector(const Ellipsoid& ell, CartesianCoord c, SinCos pole_azimuth) {
  const double rho2 = c.x * c.x + c.y * c.y;
  const double eps = kPoleThreshold * ell.a();
  if (rho2 < eps * eps) {
    return {-pole_azimuth.sin, pole_azimuth.cos, 0.0};
  }
  const double rho = std::sqrt(rho2);
  return {-c.y / rho, c.x / rho, 0.0};
}

Vec3 east_vector(const Ellipsoid& ell, CartesianCoord c, double pole_azimuth) {
  return east_vector(ell, c, sincos_rad(pole_azimuth));
}

Vec3 north_vector(Vec3 n, Vec3 p) {
  constexpr double tol = 1e-12;
  if (std::abs(norm(n) - 1.0) > tol || std::abs(norm(p) - 1.0) > tol || std::abs(dot(n, p)) > tol) {
    throw FrameError("frame vectors n and p are not orthonormal (|n|-1 = " +
                     std::to_string(norm(n) - 1.0) + ", |p|-1 = " + std::to_string(norm(p) - 1.0) +
                     ", n.p = " + std::to_string(dot(n, p)) + ")");
  }
  // Reduces to (-n3 p2, n3 p1, n1 p2 - n2 p1) for the horizontal east vector.
  return cross(n, p);
}

FrameVectors local_frame(const Ellipsoid& ell, CartesianCoord c, SinCos pole_azimuth) {
  const Vec3 n = surface_normal(ell, c);
  const Vec3 p = east_vector(ell, c, pole_azimuth);
  return {n, p, north_vector(n, p)};
}

CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, SinCos alpha0) {
  return initial_cartesian_state(ell, c, alpha0, alpha0);
}

CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, SinCos alpha0, SinCos pole_meridian) {
  const double residual = surface_residual(ell, c);
  if (!(std::abs(residual) <= 1e-12)) {
    throw DomainError("start point is off the surface (normalized residual " +
                      std::to_string(residual) + ")");
  }
  const FrameVectors f = local_frame(ell, c, pole_meridian);
  const Vec3 sigma = alpha0.sin * f.p + alpha0.cos * f.q;
  return {c.x, c.y, c.z, sigma.x, sigma.y, sigma.z};
}

CartesianState initial_cartesian_state(const Ellipsoid& ell, CartesianCoord c, double alpha0) {
  return initial_cartesian_state(ell, c, sincos_rad(alpha0));
}

double azimuth_cartesian(const Ellipsoid& ell, const CartesianState& st, SinCos pole_azimuth) {
  const FrameVectors f = local_frame(ell, st.position(), pole_azimuth);
  const Vec3 sigma = st.direction();
  const double q = dot(f.q, sigma);
  const double r = dot(f.p, sigma);
  if (q == 0.0 && r == 0.0) throw DegenerateStateError("tangent has no horizontal component");
  return wrap_azimuth(rad_to_deg(std::atan2(r, q)));
}

double tangency_residual(const Ellipsoid& ell, const CartesianState& st) {
  return (st.x * st.xd + st.y * st.yd + st.z * st.zd / ell.ep()) / ell.a();
}

}  // namespace geodivp
