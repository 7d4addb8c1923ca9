#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "errors.hpp"
#include "spectral.hpp"

namespace ist {

using State2 = std::array<cplx, 2>;

namespace detail {
using Rkf78 = boost::numeric::odeint::runge_kutta_fehlberg78<
    State2, double, State2, double, boost::numeric::odeint::array_algebra>;
}

// Adaptive integration of y' = f(x, y) from x0 to x1 (either direction).
// f has signature void(double x, const State2& y, State2& dydx).
template <class F>
State2 integrate_to(F&& f, State2 y, double x0, double x1,
                    double atol = 1e-12, double rtol = 1e-12) {
  namespace od = boost::numeric::odeint;
  if (x0 == x1) return y;
  auto ctrl = od::make_controlled(atol, rtol, detail::Rkf78());
  auto sys = [&f](const State2& s, State2& dsdx, double x) { f(x, s, dsdx); };
  const double dir = (x1 > x0) ? 1.0 : -1.0;
  double x = x0;
  double dx = dir * std::min(0.1, std::abs(x1 - x0) / 16.0);
  std::size_t steps = 0, rejects = 0;
  while ((x1 - x) * dir > 0) {
    if ((x + dx - x1) * dir > 0) dx = x1 - x;
    const auto res = ctrl.try_step(sys, y, x, dx);
    if (res == od::controlled_step_result::fail) {
      if (++rejects > 200000 || std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x)))
        throw IntegratorFailure("adaptive step collapse at x = " + std::to_string(x));
    } else if (++steps > 5000000) {
      throw IntegratorFailure("step budget exhausted");
    }
  }
  return y;
}

// Integrate and record the state at each x in xs (must be monotone in the
// direction of travel, starting at x0's side).
template <class F>
std::vector<State2> integrate_at(F&& f, State2 y, double x0,
                                 const std::vector<double>& xs,
                                 double atol = 1e-12, double rtol = 1e-12) {
  std::vector<State2> out;
  out.reserve(xs.size());
  double x = x0;
  for (double target : xs) {
    y = integrate_to(f, y, x, target, atol, rtol);
    x = target;
    out.push_back(y);
  }
  return out;
}

}  // namespace ist
