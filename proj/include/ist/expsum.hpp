#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "spectral.hpp"

namespace ist {

// One term c * exp(ax * x + bt * t).
struct ExpTerm {
  cplx c{0.0}, ax{0.0}, bt{0.0};
  cplx eval(double x, double t) const { return c * std::exp(ax * x + bt * t); }
};

// Finite sum of exponential terms; closed under d/dx, d/dt and products,
// which keeps every derivative used downstream exact.
struct ExpSum {
  std::vector<ExpTerm> terms;

  ExpSum() = default;
  ExpSum(std::initializer_list<ExpTerm> ts) : terms(ts) {}

  cplx operator()(double x, double t) const {
    cplx v = 0;
    for (const auto& e : terms) v += e.eval(x, t);
    return v;
  }

  ExpSum dx() const {
    ExpSum r;
    r.terms.reserve(terms.size());
    for (const auto& e : terms) r.terms.push_back({e.c * e.ax, e.ax, e.bt});
    return r;
  }
  ExpSum dt() const {
    ExpSum r;
    r.terms.reserve(terms.size());
    for (const auto& e : terms) r.terms.push_back({e.c * e.bt, e.ax, e.bt});
    return r;
  }

  // Largest real part of any exponent at (x, t); used to rescale before
  // evaluating ratios so that e.g. e^{16 x} at x = 40 never overflows.
  double max_re_exponent(double x, double t) const {
    double m = -1e300;
    for (const auto& e : terms)
      m = std::max(m, e.ax.real() * x + e.bt.real() * t);
    return m;
  }

  // Sum with all exponents shifted down by `shift` (multiplies by e^{-shift}).
  cplx eval_shifted(double x, double t, double shift) const {
    cplx v = 0;
    for (const auto& e : terms)
      v += e.c * std::exp(e.ax * x + e.bt * t - shift);
    return v;
  }

  // Sum of |term| magnitudes under the same shift: a cancellation scale.
  double abs_sum_shifted(double x, double t, double shift) const {
    double v = 0;
    for (const auto& e : terms)
      v += std::abs(e.c) * std::exp(e.ax.real() * x + e.bt.real() * t - shift);
    return v;
  }
};

inline ExpSum operator+(const ExpSum& a, const ExpSum& b) {
  ExpSum r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r;
}

inline ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum r;
  r.terms.reserve(a.terms.size() * b.terms.size());
  for (const auto& u : a.terms)
    for (const auto& v : b.terms)
      r.terms.push_back({u.c * v.c, u.ax + v.ax, u.bt + v.bt});
  return r;
}

inline ExpSum operator*(cplx c, const ExpSum& a) {
  ExpSum r = a;
  for (auto& e : r.terms) e.c *= c;
  return r;
}

// q(x, t) = pre(x, t) * num(x, t) / den(x, t) with pre a single exponential
// carrier.  Evaluation shifts num and den by the common dominant exponent, so
// the ratio stays finite for arbitrarily large |x| + |t|.
struct RatExp {
  ExpTerm pre{1.0, 0.0, 0.0};
  ExpSum num, den;

  struct Values {
    cplx q, qx, qt;   // value and exact first derivatives
    cplx den_shift;   // denominator after the common shift
    double den_scale; // sum of |den terms| after the shift
  };

  double common_shift(double x, double t) const {
    return std::max(num.max_re_exponent(x, t), den.max_re_exponent(x, t));
  }

  Values eval(double x, double t) const {
    const double m = common_shift(x, t);
    const cplx P = pre.eval(x, t);
    const cplx N = num.eval_shifted(x, t, m);
    const cplx D = den.eval_shifted(x, t, m);
    const cplx Nx = num.dx().eval_shifted(x, t, m);
    const cplx Dx = den.dx().eval_shifted(x, t, m);
    const cplx Nt = num.dt().eval_shifted(x, t, m);
    const cplx Dt = den.dt().eval_shifted(x, t, m);
    Values v;
    v.q = P * N / D;
    v.qx = P * ((pre.ax * N + Nx) * D - N * Dx) / (D * D);
    v.qt = P * ((pre.bt * N + Nt) * D - N * Dt) / (D * D);
    v.den_shift = D;
    v.den_scale = den.abs_sum_shifted(x, t, m);
    return v;
  }

  cplx q(double x, double t) const {
    const double m = common_shift(x, t);
    return pre.eval(x, t) * num.eval_shifted(x, t, m) /
           den.eval_shifted(x, t, m);
  }
  cplx qt(double x, double t) const { return eval(x, t).qt; }
  cplx qx(double x, double t) const { return eval(x, t).qx; }

  // Relative denominator smallness in [0, 1]: 0 exactly at a zero.
  double den_cancellation(double x, double t) const {
    const double m = den.max_re_exponent(x, t);
    const double scale = den.abs_sum_shifted(x, t, m);
    return scale > 0 ? std::abs(den.eval_shifted(x, t, m)) / scale : 0.0;
  }
};

}  // namespace ist
