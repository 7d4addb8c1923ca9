#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "errors.hpp"
#include "spectral.hpp"

namespace ist {

struct QuadResult {
  cplx value{0.0};
  double error = 0.0;
  int evals = 0;
};

namespace qk {
// 15-point Kronrod rule with embedded 7-point Gauss rule.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace qk

template <class F>
QuadResult gk15(F&& f, double a, double b) {
  const double hl = 0.5 * (b - a), ctr = 0.5 * (a + b);
  const cplx fc = f(ctr);
  cplx resk = qk::wgk[7] * fc, resg = qk::wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * qk::xgk[j];
    const cplx fsum = f(ctr - dx) + f(ctr + dx);
    resk += qk::wgk[j] * fsum;
    if (j % 2 == 1) resg += qk::wg[j / 2] * fsum;
  }
  QuadResult r;
  r.value = resk * hl;
  r.error = std::abs((resk - resg) * hl);
  r.evals = 15;
  return r;
}

// Globally adaptive bisection on [a, b] driven by the Kronrod error estimate.
template <class F>
QuadResult quad_adaptive(F&& f, double a, double b, double abs_tol = 1e-12,
                         double rel_tol = 1e-12, int max_panels = 4000) {
  struct Panel {
    double a, b, err;
    cplx val;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  std::priority_queue<Panel> panels;
  QuadResult total;
  auto push = [&](double lo, double hi) {
    auto r = gk15(f, lo, hi);
    total.evals += r.evals;
    panels.push({lo, hi, r.error, r.value});
  };
  push(a, b);
  cplx value = panels.top().val;
  double err = panels.top().err;
  int n = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(value)) && n < max_panels) {
    Panel worst = panels.top();
    panels.pop();
    value -= worst.val;
    err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted
    for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      auto r = gk15(f, lo, hi);
      total.evals += r.evals;
      panels.push({lo, hi, r.error, r.value});
      value += r.value;
      err += r.error;
    }
    ++n;
  }
  total.value = value;
  total.error = err;
  return total;
}

// Crude exponential tail bound for int_X^inf f when |f| decays like
// C e^{-r (x - X)}: probe |f| at X and X + probe to fit the rate.
struct TailEstimate {
  double bound = 0.0;  // magnitude bound for the dropped tail
  double rate = 0.0;
};

template <class F>
TailEstimate tail_exp_bound(F&& f, double X, double probe = 1.0) {
  const double m0 = std::abs(f(X));
  const double m1 = std::abs(f(X + probe));
  TailEstimate te;
  if (m0 <= 0) return te;
  if (m1 > 0 && m1 < m0) {
    te.rate = std::log(m0 / m1) / probe;
    te.bound = m0 / te.rate;
  } else {
    te.rate = 0.0;
    te.bound = m0;  // no decay detected; report the edge magnitude itself
  }
  return te;
}

}  // namespace ist
