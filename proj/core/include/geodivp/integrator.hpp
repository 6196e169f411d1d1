#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>

#include "geodivp/errors.hpp"

namespace geodivp {

/// Flat state vector of an autonomous first-order system.
template <std::size_t N>
using StateVec = std::array<double, N>;

/// Fixed-step schedule: n steps of length s_total / n.
class StepPlan {
 public:
  /// Throws ConstructionError for negative/non-finite s_total or n == 0.
  StepPlan(double s_total, std::size_t n) : s_total_(s_total), n_(n) {
    if (!std::isfinite(s_total) || s_total < 0.0) {
      throw ConstructionError("s_total", "arc length must be finite and non-negative");
    }
    if (n == 0) throw ConstructionError("n", "step count must be at least 1");
    ds_ = s_total / static_cast<double>(n);
  }

  double s_total() const noexcept { return s_total_; }
  std::size_t n() const noexcept { return n_; }
  double ds() const noexcept { return ds_; }
  /// Arc position after `step` steps, recomputed rather than accumulated.
  double position(std::size_t step) const noexcept {
    return step == n_ ? s_total_ : static_cast<double>(step) * ds_;
  }

 private:
  double s_total_;
  std::size_t n_;
  double ds_;
};

template <typename F, std::size_t N>
concept VectorField = requires(const F& f, const StateVec<N>& y) {
  { f(y) } -> std::convertible_to<StateVec<N>>;
};

template <typename O, std::size_t N>
concept StepObserver = requires(O& o, std::size_t i, double s, const StateVec<N>& y) {
  o(i, s, y);
};

namespace detail {

template <std::size_t N>
inline StateVec<N> axpy(const StateVec<N>& y, double h, const StateVec<N>& k) {
  StateVec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
  return r;
}

template <std::size_t N>
inline void require_finite(const StateVec<N>& v, std::size_t step) {
  for (double c : v) {
    if (!std::isfinite(c)) throw NumericOverflowError(step);
  }
}

}  // namespace detail

/// Increment of one classical fourth-order Runge-Kutta step. `step` only
/// labels the error raised when any stage goes non-finite.
template <std::size_t N, VectorField<N> F>
StateVec<N> rk4_increment(const F& field, const StateVec<N>& y, double ds, std::size_t step = 0) {
  const double half = 0.5 * ds;
  const StateVec<N> k1 = field(y);
  detail::require_finite(k1, step);
  const StateVec<N> k2 = field(detail::axpy(y, half, k1));
  detail::require_finite(k2, step);
  const StateVec<N> k3 = field(detail::axpy(y, half, k2));
  detail::require_finite(k3, step);
  const StateVec<N> k4 = field(detail::axpy(y, ds, k3));
  detail::require_finite(k4, step);
  const double sixth = ds / 6.0;
  StateVec<N> d;
  for (std::size_t i = 0; i < N; ++i) d[i] = sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return d;
}

template <std::size_t N, VectorField<N> F>
StateVec<N> rk4_step(const F& field, const StateVec<N>& y, double ds, std::size_t step = 0) {
  const StateVec<N> d = rk4_increment<N>(field, y, ds, step);
  StateVec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + d[i];
  detail::require_finite(out, step);
  return out;
}

/// Applies plan.n() RK4 steps. The observer sees (0, 0, y0) first and then
/// (i, s_i, y_i) after every step i = 1..n.
template <std::size_t N, VectorField<N> F, StepObserver<N> O>
StateVec<N> integrate(const F& field, const StateVec<N>& y0, const StepPlan& plan, O&& observer) {
  detail::require_finite(y0, 0);
  StateVec<N> y = y0;
  observer(std::size_t{0}, 0.0, y);
  const double ds = plan.ds();
  for (std::size_t i = 1; i <= plan.n(); ++i) {
    y = rk4_step<N>(field, y, ds, i);
    observer(i, plan.position(i), y);
  }
  return y;
}

template <std::size_t N, VectorField<N> F>
StateVec<N> integrate(const F& field, const StateVec<N>& y0, const StepPlan& plan) {
  return integrate<N>(field, y0, plan, [](std::size_t, double, const StateVec<N>&) {});
}

/// Same steps as integrate(), but the increments are accumulated with an
/// error-free two-sum so rounding does not build up over very many steps.
/// Results differ from integrate() only in the last bits.
template <std::size_t N, VectorField<N> F, StepObserver<N> O>
StateVec<N> integrate_compensated(const F& field, const StateVec<N>& y0, const StepPlan& plan, O&& observer) {
  detail::require_finite(y0, 0);
  StateVec<N> y = y0;
  StateVec<N> carry{};
  observer(std::size_t{0}, 0.0, y);
  const double ds = plan.ds();
  for (std::size_t i = 1; i <= plan.n(); ++i) {
    const StateVec<N> d = rk4_increment<N>(field, y, ds, i);
    for (std::size_t j = 0; j < N; ++j) {
      const double t = d[j] + carry[j];
      const double sum = y[j] + t;
      const double bb = sum - y[j];
      carry[j] = (y[j] - (sum - bb)) + (t - bb);
      y[j] = sum;
    }
    detail::require_finite(y, i);
    observer(i, plan.position(i), y);
  }
  return y;
}

}  // namespace geodivp
