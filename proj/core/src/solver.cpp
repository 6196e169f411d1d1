#include "geodivp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geodivp/angles.hpp"
#include "geodivp/cartesian_ode.hpp"
#include "geodivp/errors.hpp"
#include "geodivp/geodetic_ode.hpp"
#include "geodivp/integrator.hpp"

namespace geodivp {

std::string_view to_string(CoordinateSystem system) {
  return system == CoordinateSystem::geodetic ? "geodetic" : "cartesian";
}

CoordinateSystem parse_coordinate_system(std::string_view name) {
  if (name == "geodetic") return CoordinateSystem::geodetic;
  if (name == "cartesian") return CoordinateSystem::cartesian;
  throw ConstructionError("system", "expected 'geodetic' or 'cartesian', got '" + std::string(name) + "'");
}

std::size_t select_steps(double s01, double target_ds) {
  constexpr std::size_t lo = 16;
  constexpr std::size_t hi = std::size_t{1} << 20;
  if (!(target_ds > 0.0)) throw ConstructionError("target_ds", "target step must be positive");
  const double q = std::ceil(std::max(s01, 0.0) / target_ds);
  if (!(q < static_cast<double>(hi))) return hi;
  return std::clamp(static_cast<std::size_t>(q), lo, hi);
}

DirectProblem normalized(const DirectProblem& prob) {
  DirectProblem out = prob;
  out.start = GeodeticCoord::checked(prob.start.lat, prob.start.lon);
  if (!std::isfinite(prob.alpha0)) throw ConstructionError("alpha0", "azimuth must be finite");
  out.alpha0 = wrap_azimuth(prob.alpha0);
  if (!std::isfinite(prob.s01) || prob.s01 < 0.0) {
    throw ConstructionError("s01", "arc length must be finite and non-negative");
  }
  if (prob.steps && *prob.steps == 0) throw ConstructionError("steps", "step count must be at least 1");
  return out;
}

namespace {

// Incrementally unwraps a longitude sequence sampled densely along a path.
class LonUnwrapper {
 public:
  explicit LonUnwrapper(double lon0) : last_(lon0), acc_(lon0) {}
  double push(double lon) {
    acc_ += angle_diff(lon, last_);
    last_ = lon;
    return acc_;
  }

 private:
  double last_;
  double acc_;
};

// Meridian of a point for the polar-axis fallback of the east vector.
SinCos point_meridian(CartesianCoord c) {
  const double rho = std::hypot(c.x, c.y);
  if (rho == 0.0) return {0.0, 1.0};
  return {c.y / rho, c.x / rho};
}

// Integrates the displacement u = y - y0 of an autonomous field with
// compensated accumulation. Short arcs would otherwise lose a rounding of |y|
// at every step, and very long runs drift by accumulated rounding.
template <std::size_t N, typename F>
struct ShiftedField {
  F field;
  StateVec<N> origin;
  StateVec<N> operator()(const StateVec<N>& u) const { return field(absolute(u)); }
  StateVec<N> absolute(const StateVec<N>& u) const {
    StateVec<N> y;
    for (std::size_t i = 0; i < N; ++i) y[i] = origin[i] + u[i];
    return y;
  }
};

template <std::size_t N, typename F, typename O>
StateVec<N> integrate_shifted(const F& field, const StateVec<N>& y0, const StepPlan& plan, O&& observer) {
  const ShiftedField<N, F> shifted{field, y0};
  const auto report = [&](std::size_t i, double s, const StateVec<N>& v) { observer(i, s, shifted.absolute(v)); };
  const StateVec<N> u = integrate_compensated<N>(shifted, StateVec<N>{}, plan, report);
  return shifted.absolute(u);
}

struct NoSamples {
  void operator()(const TraceSample&) const {}
  bool wants(std::size_t) const { return false; }
};

struct SampleSink {
  std::vector<TraceSample>* out;
  std::size_t every;
  std::size_t n;
  void operator()(const TraceSample& s) const { out->push_back(s); }
  bool wants(std::size_t i) const { return i % every == 0 || i == n; }
};

DirectResult zero_length(const Ellipsoid& ell, const DirectProblem& prob) {
  DirectResult r;
  r.end_geodetic = prob.start;
  r.end_cartesian = geodetic_to_cartesian(ell, prob.start);
  r.end_lon_unwrapped = prob.start.lon;
  r.alpha1 = prob.alpha0;
  r.steps = 0;
  const double c0 = prime_vertical_radius(ell, deg_to_rad(prob.start.lat)) * sincosd(prob.start.lat).cos *
                    sincosd(prob.alpha0).sin;
  r.diagnostics.clairaut_c0 = c0;
  r.diagnostics.clairaut_c1 = c0;
  if (prob.system == CoordinateSystem::cartesian) {
    r.diagnostics.max_abs_surface_residual = 0.0;
    r.diagnostics.max_abs_tangency_residual = 0.0;
  }
  return r;
}

template <typename Sink>
DirectResult run_geodetic(const Ellipsoid& ell, const DirectProblem& prob, const StepPlan& plan, Sink sink) {
  if (!(std::abs(prob.start.lat) < kGeodeticStartLimit)) {
    throw PoleSingularityError("geodetic system refuses start latitude " + std::to_string(prob.start.lat) +
                               " deg (limit " + std::to_string(kGeodeticStartLimit) +
                               "); use the cartesian system");
  }
  const SinCos azi = sincosd(prob.alpha0);
  const double phi0 = deg_to_rad(prob.start.lat);
  const GeodeticState st0 = initial_geodetic_state(ell, phi0, deg_to_rad(prob.start.lon), azi);
  const double c0 = prime_vertical_radius(ell, phi0) * std::cos(phi0) * azi.sin;
  const double warn_phi = deg_to_rad(kGeodeticWarnLatitude);

  double max_dc = 0.0;
  bool high_latitude = false;
  auto observer = [&](std::size_t i, double s, const StateVec<4>& y) {
    const GeodeticState st = GeodeticState::from(y);
    const double dc = clairaut_geodetic(ell, st) - c0;
    max_dc = std::max(max_dc, std::abs(dc));
    if (std::abs(st.phi) > warn_phi) high_latitude = true;
    if (sink.wants(i)) {
      TraceSample smp;
      smp.s = s;
      smp.lon_unwrapped = rad_to_deg(st.lam);
      smp.geodetic = {rad_to_deg(st.phi), wrap_lon(smp.lon_unwrapped)};
      smp.position = geodetic_to_cartesian(ell, smp.geodetic);
      smp.alpha = azimuth_geodetic(ell, st);
      smp.delta_c = dc;
      sink(smp);
    }
  };
  const GeodeticState end = GeodeticState::from(integrate_shifted<4>(GeodeticField{&ell}, st0.vec(), plan, observer));

  DirectResult r;
  r.steps = plan.n();
  r.end_lon_unwrapped = rad_to_deg(end.lam);
  r.end_geodetic = {rad_to_deg(end.phi), wrap_lon(r.end_lon_unwrapped)};
  r.end_cartesian = geodetic_to_cartesian(ell, r.end_geodetic);
  r.alpha1 = azimuth_geodetic(ell, end);
  r.diagnostics.clairaut_c0 = c0;
  r.diagnostics.clairaut_c1 = clairaut_geodetic(ell, end);
  r.diagnostics.max_abs_delta_c = max_dc;
  if (high_latitude) r.diagnostics.warnings.emplace_back(kWarnHighLatitude);
  return r;
}

template <typename Sink>
DirectResult run_cartesian(const Ellipsoid& ell, const DirectProblem& prob, const StepPlan& plan, Sink sink) {
  const SinCos azi = sincosd(prob.alpha0);
  const CartesianCoord c0 = geodetic_to_cartesian(ell, prob.start);
  // On the polar axis the start meridian is lambda = alpha0; just off it the
  // input longitude fixes the east vector exactly.
  const SinCos meridian = std::abs(prob.start.lat) == 90.0 ? azi : sincosd(prob.start.lon);
  const CartesianState st0 = initial_cartesian_state(ell, c0, azi, meridian);
  const double clairaut0 = std::hypot(c0.x, c0.y) * azi.sin;

  double max_dc = 0.0;
  double max_s = 0.0;
  double max_t = 0.0;
  LonUnwrapper lon(prob.start.lon);
  double lon_unwrapped = prob.start.lon;
  auto observer = [&](std::size_t i, double s, const StateVec<6>& y) {
    const CartesianState st = CartesianState::from(y);
    const double dc = clairaut_cartesian(st) - clairaut0;
    max_dc = std::max(max_dc, std::abs(dc));
    max_s = std::max(max_s, std::abs(surface_residual(ell, st.position())));
    max_t = std::max(max_t, std::abs(tangency_residual(ell, st)));
    if (i > 0 && (st.x != 0.0 || st.y != 0.0)) {
      lon_unwrapped = lon.push(rad_to_deg(std::atan2(st.y, st.x)));
    }
    if (sink.wants(i)) {
      TraceSample smp;
      smp.s = s;
      smp.position = st.position();
      smp.geodetic = i == 0 ? prob.start : cartesian_to_geodetic(ell, smp.position);
      smp.lon_unwrapped = lon_unwrapped;
      smp.alpha = i == 0 ? prob.alpha0 : azimuth_cartesian(ell, st, point_meridian(st.position()));
      smp.delta_c = dc;
      sink(smp);
    }
  };
  const CartesianState end =
      CartesianState::from(integrate_shifted<6>(CartesianField{&ell}, st0.vec(), plan, observer));

  DirectResult r;
  r.steps = plan.n();
  r.end_cartesian = end.position();
  r.end_geodetic = cartesian_to_geodetic(ell, r.end_cartesian);
  r.end_lon_unwrapped = lon_unwrapped;
  r.alpha1 = azimuth_cartesian(ell, end, point_meridian(end.position()));
  r.diagnostics.clairaut_c0 = clairaut0;
  r.diagnostics.clairaut_c1 = clairaut_cartesian(end);
  r.diagnostics.max_abs_delta_c = max_dc;
  r.diagnostics.max_abs_surface_residual = max_s;
  r.diagnostics.max_abs_tangency_residual = max_t;
  return r;
}

template <typename Sink>
DirectResult run(const Ellipsoid& ell, const DirectProblem& prob, Sink sink) {
  const StepPlan plan(prob.s01, prob.steps.value_or(select_steps(prob.s01)));
  return prob.system == CoordinateSystem::geodetic ? run_geodetic(ell, prob, plan, sink)
                                                   : run_cartesian(ell, prob, plan, sink);
}

}  // namespace

DirectResult solve_direct(const Ellipsoid& ell, const DirectProblem& prob) {
  const DirectProblem p = normalized(prob);
  if (p.s01 == 0.0) {
    if (p.system == CoordinateSystem::geodetic && !(std::abs(p.start.lat) < kGeodeticStartLimit)) {
      return run(ell, p, NoSamples{});  // raises the pole guard
    }
    return zero_length(ell, p);
  }
  return run(ell, p, NoSamples{});
}

std::vector<TraceSample> trace_direct(const Ellipsoid& ell, const DirectProblem& prob, std::size_t every_k) {
  if (every_k == 0) throw ConstructionError("every_k", "sampling stride must be at least 1");
  const DirectProblem p = normalized(prob);
  std::vector<TraceSample> out;
  if (p.s01 == 0.0) {
    const DirectResult r = solve_direct(ell, p);
    TraceSample smp;
    smp.position = r.end_cartesian;
    smp.geodetic = r.end_geodetic;
    smp.lon_unwrapped = r.end_lon_unwrapped;
    smp.alpha = r.alpha1;
    out.push_back(smp);
    return out;
  }
  const std::size_t n = p.steps.value_or(select_steps(p.s01));
  out.reserve(n / every_k + 2);
  run(ell, p, SampleSink{&out, every_k, n});
  return out;
}

}  // namespace geodivp
