#ifndef STA_OTTO_ODE_HPP
#define STA_OTTO_ODE_HPP

// Adaptive Dormand-Prince 5(4) integrator with dense output.
//
// Dense output is produced by re-stepping: a query at t inside the accepted
// step [t_n, t_n + h_n] takes one fifth-order step of size t - t_n from the
// stored state y_n. The local error of that shorter step is bounded by the
// error of the accepted step, so interpolated values carry the same accuracy
// as the grid values (a plain 4th-order continuous extension would not).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "sta_otto/errors.hpp"

namespace sta_otto::numerics {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
using OdeRhs = std::function<void(double, const State<N>&, State<N>&)>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 2'000'000;
};

namespace detail {

// Butcher tableau, Dormand & Prince (1980).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// One step of size h from (t, y) with k1 = f(t, y) given. Writes the
// fifth-order solution to y_new, f(t+h, y_new) to k7 and, if err is
// non-null, the embedded error estimate.
template <std::size_t N>
void dopri_step(const OdeRhs<N>& f, double t, const State<N>& y, const State<N>& k1, double h,
                State<N>& y_new, State<N>& k7, State<N>* err) {
  State<N> k2, k3, k4, k5, k6, tmp;
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  f(t + c2 * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f(t + c3 * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f(t + c4 * h, tmp, k4);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f(t + c5 * h, tmp, k5);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  f(t + h, tmp, k6);
  for (std::size_t i = 0; i < N; ++i)
    y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  f(t + h, y_new, k7);
  if (err != nullptr) {
    for (std::size_t i = 0; i < N; ++i)
      (*err)[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i]);
  }
}

}  // namespace detail

/// Immutable record of an integration: accepted step nodes plus the
/// right-hand side needed to evaluate the solution between them.
template <std::size_t N>
class DenseTrajectory {
 public:
  DenseTrajectory(OdeRhs<N> rhs, std::vector<double> times, std::vector<State<N>> states,
                  std::vector<State<N>> slopes)
      : rhs_(std::make_shared<const OdeRhs<N>>(std::move(rhs))),
        times_(std::make_shared<const std::vector<double>>(std::move(times))),
        states_(std::make_shared<const std::vector<State<N>>>(std::move(states))),
        slopes_(std::make_shared<const std::vector<State<N>>>(std::move(slopes))) {}

  double t_begin() const { return times_->front(); }
  double t_end() const { return times_->back(); }
  std::size_t step_count() const { return times_->size() - 1; }
  const std::vector<double>& nodes() const { return *times_; }
  const State<N>& final_state() const { return states_->back(); }

  State<N> at(double t) const {
    const auto& ts = *times_;
    if (t <= ts.front()) return states_->front();
    if (t >= ts.back()) return states_->back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    const std::size_t n = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double h = t - ts[n];
    if (h == 0.0) return (*states_)[n];
    State<N> y_new, k7;
    detail::dopri_step<N>(*rhs_, ts[n], (*states_)[n], (*slopes_)[n], h, y_new, k7, nullptr);
    return y_new;
  }

 private:
  std::shared_ptr<const OdeRhs<N>> rhs_;
  std::shared_ptr<const std::vector<double>> times_;
  std::shared_ptr<const std::vector<State<N>>> states_;
  std::shared_ptr<const std::vector<State<N>>> slopes_;
};

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). Throws SolverFailure on
/// step-size underflow, non-finite states or when max_steps is exhausted.
template <std::size_t N>
DenseTrajectory<N> integrate_dopri5(OdeRhs<N> f, double t0, double t1, const State<N>& y0,
                                    const OdeOptions& opts = {}) {
  const double span = t1 - t0;
  if (!(span > 0.0)) throw SolverFailure("integration interval must have positive length", t0);

  auto scale = [&](double a, double b) {
    return opts.abs_tol + opts.rel_tol * std::max(std::fabs(a), std::fabs(b));
  };

  std::vector<double> times{t0};
  std::vector<State<N>> states{y0};
  std::vector<State<N>> slopes;

  State<N> k1;
  f(t0, y0, k1);
  slopes.push_back(k1);

  // Initial step guess (Hairer, Norsett & Wanner, II.4).
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = scale(y0[i], y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (k1[i] / sc) * (k1[i] / sc);
  }
  d0 = std::sqrt(d0 / N);
  d1 = std::sqrt(d1 / N);
  double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  h = std::min(h, span);

  double t = t0;
  State<N> y = y0;
  State<N> y_new, k7, err;
  std::size_t steps = 0;

  while (t < t1) {
    if (++steps > opts.max_steps) throw SolverFailure("step budget exhausted", t);
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }
    if (h <= 1e-15 * std::max(1.0, std::fabs(t))) throw SolverFailure("step size underflow", t);

    detail::dopri_step<N>(f, t, y, k1, h, y_new, k7, &err);

    // Max norm: every component individually meets its tolerance.
    double err_norm = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::isfinite(y_new[i])) finite = false;
      err_norm = std::max(err_norm, std::fabs(err[i]) / scale(y[i], y_new[i]));
    }
    if (!finite || !std::isfinite(err_norm)) {
      h *= 0.1;
      continue;
    }

    if (err_norm <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      k1 = k7;
      times.push_back(t);
      states.push_back(y);
      slopes.push_back(k1);
      const double fac = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
    }
  }

  return DenseTrajectory<N>(std::move(f), std::move(times), std::move(states), std::move(slopes));
}

}  // namespace sta_otto::numerics

#endif  // STA_OTTO_ODE_HPP
