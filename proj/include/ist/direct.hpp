#pragma once

// Direct scattering for the 2x2 problem v_x = (i k J + Q) v with
// Q = [[0, q], [r, 0]], r(x) = sigma q(-x, -t), on nonzero backgrounds.
// Jost solutions are integrated in the bounded gauge (the e^{+-i lambda x}
// factor removed), so every solve stays O(1) in amplitude on its own side.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "closed_form.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "ode.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace ist {

struct Potential {
    EquationSpec spec;
    double t = 0.0;
    std::function<cplx(double)> q;   // x -> q(x, t), carrier-gauged if beta != 0
    std::function<cplx(double)> qr;  // x -> q(-x, -t), same gauge
    double L = 25.0;                 // truncation half-width

    cplx r(double x) const { return static_cast<double>(spec.sigma) * qr(x); }
    SpectralPoint point(cplx z) const {
        return SpectralPoint{z, spec.q0, spec.topology()};
    }
};

// For beta != 0 the scattering problem acts on q e^{-i beta x}, which restores
// constant boundary values; reconstruction puts the carrier back.
inline Potential make_potential(const FieldSolution& f, double t) {
    Potential p;
    p.spec = f.spec;
    p.t = t;
    const double beta = f.spec.beta;
    if (beta == 0.0) {
        p.q = [f, t](double x) { return f.q(x, t); };
        p.qr = [f, t](double x) { return f.q(-x, -t); };
    } else {
        p.q = [f, t, beta](double x) { return f.q(x, t) * std::exp(-iu * beta * x); };
        p.qr = [f, t, beta](double x) { return f.q(-x, -t) * std::exp(iu * beta * x); };
    }
    p.L = std::max(25.0 / f.spec.q0, 25.0 / f.decay_rate);
    return p;
}

enum class JostKind { M, Mbar, N, Nbar };

namespace detail {

// M and Nbar carry the e^{+i lambda x} gauge; N and Mbar the opposite one.
inline bool plus_gauge(JostKind k) { return k == JostKind::M || k == JostKind::Nbar; }
inline bool from_left(JostKind k) { return k == JostKind::M || k == JostKind::Mbar; }

}  // namespace detail

inline State2 boundary_vector(const Potential& pot, cplx z, JostKind kind) {
    const SpectralPoint sp = pot.point(z);
    const cplx lk = lambda_of(sp) + k_of(sp);
    const Mat2 Qm = q_limit(pot.spec, Side::Minus, pot.t);
    const Mat2 Qp = q_limit(pot.spec, Side::Plus, pot.t);
    switch (kind) {
        case JostKind::M: return {lk, iu * Qm.a21};
        case JostKind::Mbar: return {-iu * Qm.a12, lk};
        case JostKind::N: return {-iu * Qp.a12, lk};
        case JostKind::Nbar: return {lk, iu * Qp.a21};
    }
    throw std::logic_error("unknown JostKind");
}

// Integrate one Jost solution from its boundary end to each x in xs
// (xs ascending). Relative integrator tolerances default to 1e-12.
inline std::vector<State2> jost_on_grid(const Potential& pot, cplx z, JostKind kind,
                                        const std::vector<double>& xs,
                                        double atol = 1e-12, double rtol = 1e-12) {
    const SpectralPoint sp = pot.point(z);
    const cplx k = k_of(sp), lam = lambda_of(sp);
    const cplx d1 = detail::plus_gauge(kind) ? iu * (lam - k) : -iu * (lam + k);
    const cplx d2 = detail::plus_gauge(kind) ? iu * (lam + k) : -iu * (lam - k);
    auto rhs = [&pot, d1, d2](double x, const State2& y, State2& dy) {
        const cplx qv = pot.q(x), rv = pot.r(x);
        dy[0] = d1 * y[0] + qv * y[1];
        dy[1] = rv * y[0] + d2 * y[1];
    };
    State2 y = boundary_vector(pot, z, kind);
    if (detail::from_left(kind)) return integrate_at(rhs, y, -pot.L, xs, atol, rtol);
    std::vector<double> rev(xs.rbegin(), xs.rend());
    auto vals = integrate_at(rhs, y, pot.L, rev, atol, rtol);
    std::reverse(vals.begin(), vals.end());
    return vals;
}

inline State2 jost_at(const Potential& pot, cplx z, JostKind kind, double x = 0.0,
                      double atol = 1e-12, double rtol = 1e-12) {
    return jost_on_grid(pot, z, kind, {x}, atol, rtol)[0];
}

struct ScatteringCoeffs {
    cplx a, abar, b, bbar;
    cplx unitarity_defect() const { return a * abar - b * bbar - 1.0; }
};

namespace detail {

inline void check_branch(const SpectralPoint& sp) {
    if (std::abs(lambda_of(sp)) <= 1e-8)
        throw BranchPointProximity("z too close to a branch point of lambda(z)");
}

}  // namespace detail

// Analytic-side coefficient only: a(z) from the (M, N) pair, valid in the
// closed upper region. Wronskians are evaluated at x = 0 where the gauge
// factors cancel.
inline cplx scattering_a(const Potential& pot, cplx z,
                         double atol = 1e-12, double rtol = 1e-12) {
    const SpectralPoint sp = pot.point(z);
    detail::check_branch(sp);
    const cplx k = k_of(sp), lam = lambda_of(sp);
    const State2 M = jost_at(pot, z, JostKind::M, 0.0, atol, rtol);
    const State2 N = jost_at(pot, z, JostKind::N, 0.0, atol, rtol);
    return (M[0] * N[1] - M[1] * N[0]) / (2.0 * lam * (lam + k));
}

inline ScatteringCoeffs scattering_coeffs(const Potential& pot, cplx z,
                                          double atol = 1e-12, double rtol = 1e-12) {
    const SpectralPoint sp = pot.point(z);
    detail::check_branch(sp);
    const cplx k = k_of(sp), lam = lambda_of(sp);
    const State2 M = jost_at(pot, z, JostKind::M, 0.0, atol, rtol);
    const State2 Mb = jost_at(pot, z, JostKind::Mbar, 0.0, atol, rtol);
    const State2 N = jost_at(pot, z, JostKind::N, 0.0, atol, rtol);
    const State2 Nb = jost_at(pot, z, JostKind::Nbar, 0.0, atol, rtol);
    const cplx den = 2.0 * lam * (lam + k);
    ScatteringCoeffs c;
    c.a = (M[0] * N[1] - M[1] * N[0]) / den;
    c.abar = -(Mb[0] * Nb[1] - Mb[1] * Nb[0]) / den;
    c.b = -(M[0] * Nb[1] - M[1] * Nb[0]) / den;
    c.bbar = (Mb[0] * N[1] - Mb[1] * N[0]) / den;
    return c;
}

// --------------------------------------------------------------------------
// Discrete eigenvalue search: coarse polar scan of |a| over an annulus in the
// upper region, then complex secant refinement of each local minimum.
// --------------------------------------------------------------------------

struct EigenSearchOptions {
    double r_lo = 0.05, r_hi = 20.0;  // annulus radii in units of q0
    int n_r = 20, n_theta = 48;
    double scan_atol = 1e-9, scan_rtol = 1e-7;
    double refine_atol = 1e-12, refine_rtol = 1e-12;
    double a_tol = 1e-9;          // residual acceptance |a(z)|
    double cluster_tol = 1e-6;    // minimal admissible zero separation
    int max_iter = 40;
    double seed_cut = 0.5;        // scan minima above this |a| are ignored
};

inline std::vector<cplx> find_eigenvalues(const Potential& pot,
                                          const EigenSearchOptions& opt = {}) {
    const double q0 = pot.spec.q0;
    const CutTopology cut = pot.spec.topology();
    const int nr = opt.n_r, nt = opt.n_theta;
    std::vector<double> rs(nr), ths(nt);
    for (int i = 0; i < nr; ++i)
        rs[i] = q0 * opt.r_lo * std::pow(opt.r_hi / opt.r_lo, double(i) / (nr - 1));
    for (int j = 0; j < nt; ++j) ths[j] = 2 * pi * (j + 0.5) / nt;

    auto admissible = [&](cplx z) {
        const SpectralPoint sp{z, q0, cut};
        return std::abs(lambda_of(sp)) > 1e-6 &&
               classify(sp) == RegionTag::UpperAnalytic;
    };

    std::vector<double> amag(static_cast<size_t>(nr) * nt,
                             std::numeric_limits<double>::infinity());
    parallel_for(static_cast<size_t>(nr) * nt, [&](size_t idx) {
        const int i = static_cast<int>(idx) / nt, j = static_cast<int>(idx) % nt;
        const cplx z = std::polar(rs[i], ths[j]);
        if (!admissible(z)) return;
        amag[idx] = std::abs(scattering_a(pot, z, opt.scan_atol, opt.scan_rtol));
    });

    // local minima on the polar grid (angle wraps, radius clamps)
    std::vector<cplx> seeds;
    auto at = [&](int i, int j) { return amag[static_cast<size_t>(i) * nt + ((j % nt) + nt) % nt]; };
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            const double v = at(i, j);
            if (!(v < opt.seed_cut)) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (!di && !dj) continue;
                    const int ii = std::clamp(i + di, 0, nr - 1);
                    if (at(ii, j + dj) < v) { is_min = false; break; }
                }
            if (is_min) seeds.push_back(std::polar(rs[i], ths[j]));
        }

    std::vector<cplx> zeros;
    for (cplx seed : seeds) {
        cplx z0 = seed, z1 = seed * (1.0 + 1e-3) + cplx(0.0, 1e-3 * q0);
        if (!admissible(z1)) z1 = seed * (1.0 - 1e-3);
        cplx a0 = scattering_a(pot, z0, opt.refine_atol, opt.refine_rtol);
        cplx a1;
        bool ok = false, exhausted = false;
        double best = std::abs(a0);
        try {
            a1 = scattering_a(pot, z1, opt.refine_atol, opt.refine_rtol);
            best = std::min(best, std::abs(a1));
            int it = 0;
            for (; it < opt.max_iter; ++it) {
                if (std::abs(a1 - a0) == 0.0) break;
                const cplx z2 = z1 - a1 * (z1 - z0) / (a1 - a0);
                if (!std::isfinite(z2.real()) || !std::isfinite(z2.imag())) break;
                if (std::abs(z2) < 0.02 * q0 || std::abs(z2) > 40.0 * q0) break;
                z0 = z1; a0 = a1; z1 = z2;
                const SpectralPoint sp{z1, q0, cut};
                if (std::abs(lambda_of(sp)) < 1e-7) break;  // drifted onto the contour
                a1 = scattering_a(pot, z1, opt.refine_atol, opt.refine_rtol);
                best = std::min(best, std::abs(a1));
                if (std::abs(a1) < opt.a_tol) {
                    ok = true;
                    break;
                }
            }
            exhausted = it == opt.max_iter;
        } catch (const BranchPointProximity&) {
            ok = false;
        }
        if (!ok && exhausted && best < 1e-6)
            throw NoConvergence("secant stalled on a near-zero of a(z)");
        if (ok && admissible(z1)) zeros.push_back(z1);
    }

    // merge duplicates (same zero reached from different seeds)
    std::vector<cplx> uniq;
    for (cplx z : zeros) {
        bool dup = false;
        for (cplx u : uniq)
            if (std::abs(z - u) < 1e-7 * std::max(1.0, std::abs(z))) { dup = true; break; }
        if (!dup) uniq.push_back(z);
    }
    for (size_t i = 0; i < uniq.size(); ++i)
        for (size_t j = i + 1; j < uniq.size(); ++j)
            if (std::abs(uniq[i] - uniq[j]) < opt.cluster_tol)
                throw ClusteredZeros("two zeros of a(z) closer than the resolvable separation");
    std::sort(uniq.begin(), uniq.end(), [](cplx a, cplx b) {
        if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) > std::abs(b);
        return std::arg(a) < std::arg(b);
    });
    return uniq;
}

// --------------------------------------------------------------------------
// Norming constants: at a zero of a, M(x, z_j) = b_j e^{2 i lambda x} N(x, z_j);
// the ratio is read off componentwise at x = 0 and averaged over the
// components that carry weight.
// --------------------------------------------------------------------------

namespace detail {

inline cplx averaged_ratio(const State2& num, const State2& den) {
    const double mx = std::max(std::abs(den[0]), std::abs(den[1]));
    if (!(mx > 0.0)) throw DegenerateNormalizer("vanishing eigenfunction in norming ratio");
    cplx sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < 2; ++i)
        if (std::abs(den[i]) > 0.1 * mx) {
            sum += num[i] / den[i];
            ++cnt;
        }
    if (cnt == 0) throw DegenerateNormalizer("no usable component in norming ratio");
    return sum / static_cast<double>(cnt);
}

}  // namespace detail

inline cplx norming_b(const Potential& pot, cplx zj,
                      double atol = 1e-12, double rtol = 1e-12) {
    const State2 M = jost_at(pot, zj, JostKind::M, 0.0, atol, rtol);
    const State2 N = jost_at(pot, zj, JostKind::N, 0.0, atol, rtol);
    return detail::averaged_ratio(M, N);
}

inline cplx norming_bbar(const Potential& pot, cplx zbj,
                         double atol = 1e-12, double rtol = 1e-12) {
    const State2 Mb = jost_at(pot, zbj, JostKind::Mbar, 0.0, atol, rtol);
    const State2 Nb = jost_at(pot, zbj, JostKind::Nbar, 0.0, atol, rtol);
    return detail::averaged_ratio(Mb, Nb);
}

// --------------------------------------------------------------------------
// Neumann-series evaluation of M as an independent cross-check of the ODE
// route. The layered kernel G(xi) = theta(xi)[c1 + c2 e^{2 i lambda xi}]
// splits the update into two running prefix integrals, so each sweep is O(n).
// --------------------------------------------------------------------------

struct NeumannResult {
    std::vector<double> xs;
    std::vector<State2> M;
    int iterations = 0;
    double last_delta = 0.0;
};

inline NeumannResult neumann_m(const Potential& pot, cplx z,
                               double x_lo = -4.0, double x_hi = 4.0,
                               double h = 1e-3, int max_iter = 50) {
    const SpectralPoint sp = pot.point(z);
    detail::check_branch(sp);
    const cplx k = k_of(sp), lam = lambda_of(sp);
    const Mat2 Qm = q_limit(pot.spec, Side::Minus, pot.t);
    const Mat2 A{-iu * k, Qm.a12, Qm.a21, iu * k};
    const Mat2 c1{(lam + iu * A.a11) / (2.0 * lam), iu * A.a12 / (2.0 * lam),
                  iu * A.a21 / (2.0 * lam), (lam + iu * A.a22) / (2.0 * lam)};
    const Mat2 c2{(lam - iu * A.a11) / (2.0 * lam), -iu * A.a12 / (2.0 * lam),
                  -iu * A.a21 / (2.0 * lam), (lam - iu * A.a22) / (2.0 * lam)};

    const size_t n = static_cast<size_t>(std::llround((x_hi - x_lo) / h)) + 1;
    NeumannResult res;
    res.xs.resize(n);
    std::vector<cplx> dq(n), dr(n), ep(n), em(n);
    for (size_t i = 0; i < n; ++i) {
        const double x = x_lo + h * static_cast<double>(i);
        res.xs[i] = x;
        dq[i] = pot.q(x) - Qm.a12;
        dr[i] = pot.r(x) - Qm.a21;
        ep[i] = std::exp(2.0 * iu * lam * x);
        em[i] = std::exp(-2.0 * iu * lam * x);
    }
    const State2 w = boundary_vector(pot, z, JostKind::M);
    std::vector<State2> M(n, w), Mn(n);
    std::vector<State2> g1(n), g2(n);
    for (int it = 1; it <= max_iter; ++it) {
        for (size_t i = 0; i < n; ++i) {
            const State2 dqm{dq[i] * M[i][1], dr[i] * M[i][0]};  // DeltaQ * M
            g1[i] = dqm;
            g2[i] = {em[i] * dqm[0], em[i] * dqm[1]};
        }
        State2 s1{0.0, 0.0}, s2{0.0, 0.0};
        double delta = 0.0, peak = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (i) {
                s1[0] += 0.5 * h * (g1[i - 1][0] + g1[i][0]);
                s1[1] += 0.5 * h * (g1[i - 1][1] + g1[i][1]);
                s2[0] += 0.5 * h * (g2[i - 1][0] + g2[i][0]);
                s2[1] += 0.5 * h * (g2[i - 1][1] + g2[i][1]);
            }
            const State2 k1 = c1 * s1;
            const State2 k2 = c2 * s2;
            Mn[i] = {w[0] + k1[0] + ep[i] * k2[0], w[1] + k1[1] + ep[i] * k2[1]};
            delta = std::max({delta, std::abs(Mn[i][0] - M[i][0]), std::abs(Mn[i][1] - M[i][1])});
            peak = std::max({peak, std::abs(Mn[i][0]), std::abs(Mn[i][1])});
        }
        M.swap(Mn);
        res.iterations = it;
        res.last_delta = delta;
        if (!std::isfinite(peak) || peak > 1e8)
            throw Divergence("Neumann sweep grew without bound");
        if (delta <= 1e-13 * std::max(1.0, peak)) break;
    }
    res.M = std::move(M);
    return res;
}

}  // namespace ist
