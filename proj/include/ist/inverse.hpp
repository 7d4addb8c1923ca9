#pragma once

// Reflectionless inverse problem: the discrete closed system for the
// eigenfunction values N1(x, z_j), its solution by dense LU, and recovery of
// q(x, t) and s(x, t) from ScatteringData. Three independent recovery routes
// (left sum, right sum through Nbar, and the Mbar system) cross-validate.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "sdata.hpp"
#include "spectral.hpp"

namespace ist {

enum class RecoveryRoute { LeftSum, RightSum, MbarSum };

struct DiscreteSystem {
    int J = 0;
    Eigen::MatrixXcd C, D;   // coupling factors: A = I - C D
    Eigen::MatrixXcd A;
    Eigen::VectorXcd rhs;    // right-hand side of the N1 system
    std::vector<cplx> E, Ebar;  // e^{2 i lambda(z_l) x}, e^{-2 i lambda(zbar_j) x}
};

namespace detail {

inline void check_derivatives(const ScatteringData& d, std::vector<cplx>& ap,
                              std::vector<cplx>& abp) {
    ap.resize(d.J());
    abp.resize(d.J());
    for (int j = 0; j < d.J(); ++j) {
        ap[j] = a_prime(d, j);
        abp[j] = abar_prime(d, j);
        if (std::abs(ap[j]) < 1e-14 || std::abs(abp[j]) < 1e-14)
            throw MissingDerivative("a'(z_j) vanishes; norming constants undefined");
    }
}

inline void check_reflectionless(const ScatteringData& d) {
    for (cplx rho : d.reflection)
        if (std::abs(rho) > 1e-6)
            throw NotReflectionless("nonzero reflection samples attached to data");
}

}  // namespace detail

// Linear system whose solution is u_m = N1(x, z_m). Norming constants are
// taken at the data's own time; evolve first for other times.
inline DiscreteSystem assemble(const ScatteringData& d, double x) {
    detail::check_reflectionless(d);
    const int J = d.J();
    std::vector<cplx> ap, abp;
    detail::check_derivatives(d, ap, abp);
    DiscreteSystem sys;
    sys.J = J;
    sys.E.resize(J);
    sys.Ebar.resize(J);
    const CutTopology cut = d.spec.topology();
    for (int j = 0; j < J; ++j) {
        sys.E[j] = std::exp(2.0 * iu * lambda_of({d.z[j], d.spec.q0, cut}) * x);
        sys.Ebar[j] = std::exp(-2.0 * iu * lambda_of({d.zbar[j], d.spec.q0, cut}) * x);
    }
    sys.C = Eigen::MatrixXcd(J, J);
    sys.D = Eigen::MatrixXcd(J, J);
    for (int m = 0; m < J; ++m)
        for (int j = 0; j < J; ++j)
            sys.C(m, j) = d.z[m] * d.bbar[j] * sys.Ebar[j] /
                          ((d.z[m] - d.zbar[j]) * d.zbar[j] * abp[j]);
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < J; ++l)
            sys.D(j, l) = d.zbar[j] * d.b[l] * sys.E[l] /
                          ((d.zbar[j] - d.z[l]) * d.z[l] * ap[l]);
    sys.A = Eigen::MatrixXcd::Identity(J, J) - sys.C * sys.D;
    Eigen::VectorXcd zbar(J);
    for (int j = 0; j < J; ++j) zbar(j) = d.zbar[j];
    sys.rhs = Eigen::VectorXcd::Constant(J, -iu * d.spec.q_plus(d.t)) + sys.C * zbar;
    return sys;
}

namespace detail {

// The closed-system matrix tends to the identity at +infinity, so the natural
// degeneracy measure is det(A) against row scales clamped below by one. The
// determinant vanishes on real (x, t) lines; whether the point is a genuine
// pole of q or a removable 0/0 is decided by testing the right-hand side
// against the near-null direction.
struct DegeneracyInfo {
    bool degenerate = false;
    bool removable = false;
};

inline Eigen::VectorXcd solve_checked(const Eigen::MatrixXcd& A,
                                      const Eigen::VectorXcd& rhs, double x, double t,
                                      DegeneracyInfo* info = nullptr) {
    double scale = 1.0;
    for (Eigen::Index m = 0; m < A.rows(); ++m)
        scale *= std::max(1.0, A.row(m).cwiseAbs().sum());
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double det = std::abs(lu.determinant());
    if (det < 1e-4 * scale) {
        if (!info) throw SingularPoint("closed system singular", x, t);
        info->degenerate = true;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullU);
        const Eigen::VectorXcd null_dir = svd.matrixU().col(A.rows() - 1);
        const double proj = std::abs((null_dir.adjoint() * rhs)(0));
        info->removable = proj <= 1e-3 * std::max(1.0, rhs.norm());
        return {};
    }
    return lu.solve(rhs);
}

}  // namespace detail

// N1(x, z_m) for m = 1..J.
inline std::vector<cplx> solve_n1(const ScatteringData& d, double x) {
    DiscreteSystem sys = assemble(d, x);
    Eigen::VectorXcd u = detail::solve_checked(sys.A, sys.rhs, x, d.t);
    return {u.data(), u.data() + sys.J};
}

// N2(x, z_m): same matrix, boundary value z_m, source i r_+ = i sigma q_-(-t).
inline std::vector<cplx> solve_n2(const ScatteringData& d, double x) {
    DiscreteSystem sys = assemble(d, x);
    const cplx rplus = iu * static_cast<double>(d.spec.sigma) * d.spec.q_minus(-d.t);
    Eigen::VectorXcd rhs2(sys.J);
    for (int m = 0; m < sys.J; ++m) {
        rhs2(m) = d.z[m];
        for (int j = 0; j < sys.J; ++j) rhs2(m) += sys.C(m, j) * rplus;
    }
    Eigen::VectorXcd v = detail::solve_checked(sys.A, rhs2, x, d.t);
    return {v.data(), v.data() + sys.J};
}

// Mbar1(x, zbar_m) from the left-normalized system; the norming constants of
// the Mbar/N pairing are -1/b_j and -1/bbar_j.
inline std::vector<cplx> solve_mbar1(const ScatteringData& d, double x) {
    detail::check_reflectionless(d);
    const int J = d.J();
    std::vector<cplx> ap, abp;
    detail::check_derivatives(d, ap, abp);
    const CutTopology cut = d.spec.topology();
    std::vector<cplx> Em(J), Ebm(J);
    for (int j = 0; j < J; ++j) {
        Em[j] = std::exp(-2.0 * iu * lambda_of({d.z[j], d.spec.q0, cut}) * x);
        Ebm[j] = std::exp(2.0 * iu * lambda_of({d.zbar[j], d.spec.q0, cut}) * x);
    }
    Eigen::MatrixXcd C(J, J), D(J, J);
    for (int m = 0; m < J; ++m)
        for (int j = 0; j < J; ++j)
            C(m, j) = -d.zbar[m] * (-1.0 / d.b[j]) * Em[j] /
                      ((d.zbar[m] - d.z[j]) * d.z[j] * ap[j]);
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < J; ++l)
            D(j, l) = -d.z[j] * (-1.0 / d.bbar[l]) * Ebm[l] /
                      ((d.z[j] - d.zbar[l]) * d.zbar[l] * abp[l]);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(J, J) - C * D;
    Eigen::VectorXcd zvec(J);
    for (int j = 0; j < J; ++j) zvec(j) = d.z[j];
    Eigen::VectorXcd rhs =
        Eigen::VectorXcd::Constant(J, -iu * d.spec.q_minus(d.t)) + C * zvec;
    Eigen::VectorXcd m = detail::solve_checked(A, rhs, x, d.t);
    return {m.data(), m.data() + J};
}

namespace detail {

// Gauge-stripped recovery (no beta carrier). Returns no value and fills info
// when the closed system degenerates at this x.
inline cplx recover_core(const ScatteringData& d, double x, RecoveryRoute route,
                         DegeneracyInfo& info) {
    std::vector<cplx> ap, abp;
    check_derivatives(d, ap, abp);
    if (route == RecoveryRoute::MbarSum) {
        check_reflectionless(d);
        const int J = d.J();
        const CutTopology cut = d.spec.topology();
        std::vector<cplx> Em(J), Ebm(J);
        for (int j = 0; j < J; ++j) {
            Em[j] = std::exp(-2.0 * iu * lambda_of({d.z[j], d.spec.q0, cut}) * x);
            Ebm[j] = std::exp(2.0 * iu * lambda_of({d.zbar[j], d.spec.q0, cut}) * x);
        }
        Eigen::MatrixXcd C(J, J), D(J, J);
        for (int m = 0; m < J; ++m)
            for (int j = 0; j < J; ++j)
                C(m, j) = -d.zbar[m] * (-1.0 / d.b[j]) * Em[j] /
                          ((d.zbar[m] - d.z[j]) * d.z[j] * ap[j]);
        for (int j = 0; j < J; ++j)
            for (int l = 0; l < J; ++l)
                D(j, l) = -d.z[j] * (-1.0 / d.bbar[l]) * Ebm[l] /
                          ((d.z[j] - d.zbar[l]) * d.zbar[l] * abp[l]);
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(J, J) - C * D;
        Eigen::VectorXcd zvec(J);
        for (int j = 0; j < J; ++j) zvec(j) = d.z[j];
        Eigen::VectorXcd rhs =
            Eigen::VectorXcd::Constant(J, -iu * d.spec.q_minus(d.t)) + C * zvec;
        Eigen::VectorXcd m = solve_checked(A, rhs, x, d.t, &info);
        if (info.degenerate) return {};
        cplx q = d.spec.q_minus(d.t);
        for (int j = 0; j < J; ++j) {
            cplx nbar = d.z[j];
            for (int l = 0; l < J; ++l) nbar += D(j, l) * m(l);
            q -= iu * (-1.0 / d.b[j]) * Em[j] * nbar / (d.z[j] * ap[j]);
        }
        return q;
    }
    DiscreteSystem sys = assemble(d, x);
    Eigen::VectorXcd u = solve_checked(sys.A, sys.rhs, x, d.t, &info);
    if (info.degenerate) return {};
    if (route == RecoveryRoute::LeftSum) {
        cplx acc = 1.0;
        for (int j = 0; j < sys.J; ++j)
            acc += d.b[j] * sys.E[j] / (-d.z[j] * d.z[j] * ap[j]) * u(j);
        return d.spec.q_plus(d.t) * acc;
    }
    // RightSum: Nbar1(x, zbar_j) = zbar_j + sum_l D(j,l) u_l
    cplx q = d.spec.q_plus(d.t);
    for (int j = 0; j < sys.J; ++j) {
        cplx nbar = d.zbar[j];
        for (int l = 0; l < sys.J; ++l) nbar += sys.D(j, l) * u(l);
        q += iu * d.bbar[j] * sys.Ebar[j] * nbar / (d.zbar[j] * abp[j]);
    }
    return q;
}

// On a removable degeneracy line (dark-type data: numerator and determinant
// vanish together) the value is filled by degree-3 interpolation across x;
// two staggered stencils must agree, otherwise the zero is a genuine pole.
inline cplx recover_impl(const ScatteringData& d, double x, RecoveryRoute route,
                         bool allow_interp) {
    DegeneracyInfo info;
    cplx q = recover_core(d, x, route, info);
    if (!info.degenerate) return q;
    if (!allow_interp || !info.removable)
        throw SingularPoint("potential singular on a space-time line", x, d.t);
    const double h = 5e-4;
    auto at = [&](double off) { return recover_impl(d, x + off, route, false); };
    const cplx P =
        (2.0 / 3.0) * (at(h) + at(-h)) - (1.0 / 6.0) * (at(2 * h) + at(-2 * h));
    const cplx Q = (2.0 / 3.0) * (at(1.5 * h) + at(-1.5 * h)) -
                   (1.0 / 6.0) * (at(3 * h) + at(-3 * h));
    if (std::abs(P - Q) > 1e-6 * std::max(1.0, std::abs(P)) || std::abs(P) > 1e8)
        throw SingularPoint("potential singular on a space-time line", x, d.t);
    return P;
}

}  // namespace detail

// q at the data's own time. For beta != 0 the system recovers the gauged
// field and the spatial carrier is restored afterwards.
inline cplx recover_q(const ScatteringData& d, double x,
                      RecoveryRoute route = RecoveryRoute::LeftSum) {
    const cplx carrier =
        d.spec.beta != 0.0 ? std::exp(iu * d.spec.beta * x) : cplx(1.0);
    if (d.J() == 0) {
        detail::check_reflectionless(d);
        return d.spec.q_plus(d.t) * carrier;
    }
    return detail::recover_impl(d, x, route, true) * carrier;
}

// Grid sampling: evolve once per time row, parallelize across points.
// Singular points are recorded as NaN rather than aborting the sweep.
struct RecoveredGrid {
    std::vector<double> xs, ts;
    std::vector<cplx> q;  // row-major, q[it * xs.size() + ix]
    int singular_count = 0;
    cplx at(std::size_t it, std::size_t ix) const { return q[it * xs.size() + ix]; }
};

inline RecoveredGrid recover_q_grid(const ScatteringData& d,
                                    const std::vector<double>& xs,
                                    const std::vector<double>& ts,
                                    RecoveryRoute route = RecoveryRoute::LeftSum) {
    RecoveredGrid g;
    g.xs = xs;
    g.ts = ts;
    g.q.assign(xs.size() * ts.size(), cplx(0.0));
    std::vector<ScatteringData> rows;
    rows.reserve(ts.size());
    for (double t : ts) rows.push_back(evolve(d, t));
    std::vector<int> bad(ts.size(), 0);
    parallel_for(xs.size() * ts.size(), [&](std::size_t idx) {
        const std::size_t it = idx / xs.size(), ix = idx % xs.size();
        try {
            g.q[idx] = recover_q(rows[it], xs[ix], route);
        } catch (const SingularPoint&) {
            g.q[idx] = cplx(std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN());
            ++bad[it];
        }
    });
    for (int n : bad) g.singular_count += n;
    return g;
}

// s(x, t) by quadrature of its defining integral. The t-derivative of the
// nonlocal product uses a 5-point stencil; the integral runs to X with an
// exponential tail bound beyond. For beta != 0 the constant terrace alpha
// beta / 2 is added. The carrier drops out of the product q(x',t) q(-x',-t),
// so the gauged recovery can be used directly.
struct SRecovery {
    ScatteringData fwd[4], bwd[4];  // evolved to t + j h and -(t + j h)
    double h = 0.0;
    double sigma = 0.0, terrace = 0.0;
    double X = 25.0;

    cplx product_dt(double xp) const {
        static constexpr double w[4] = {1.0, -8.0, 8.0, -1.0};
        cplx acc = 0.0;
        for (int i = 0; i < 4; ++i)
            acc += w[i] * recover_q(fwd[i], xp) * recover_q(bwd[i], -xp);
        return acc / (12.0 * h);
    }

    cplx operator()(double x) const {
        auto g = [this](double xp) { return product_dt(xp); };
        cplx acc = quad_adaptive(g, x, X, 1e-10, 1e-10).value;
        // extend until the certified exponential tail bound is negligible
        double edge = X;
        TailEstimate te = tail_exp_bound(g, edge, 1.0);
        while (te.bound > 1e-10 && edge < X + 60.0) {
            acc += quad_adaptive(g, edge, edge + 5.0, 1e-10, 1e-10).value;
            edge += 5.0;
            te = tail_exp_bound(g, edge, 1.0);
        }
        return sigma * acc + terrace;
    }
};

inline SRecovery make_s_recovery(const ScatteringData& d, double t, double X = 25.0) {
    SRecovery s;
    s.h = 1e-5 * std::max(1.0, std::abs(t));
    static constexpr double off[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int i = 0; i < 4; ++i) {
        const double tau = t + off[i] * s.h;
        s.fwd[i] = evolve(d, tau);
        s.bwd[i] = evolve(d, -tau);
    }
    s.sigma = d.spec.sigma;
    s.terrace = d.spec.beta != 0.0 ? d.spec.alpha * d.spec.beta / 2.0 : 0.0;
    s.X = X;
    return s;
}

inline cplx recover_s(const ScatteringData& d, double x, double t, double X = 25.0) {
    if (d.J() == 0) return cplx(d.spec.beta != 0.0 ? d.spec.alpha * d.spec.beta / 2.0 : 0.0);
    return make_s_recovery(d, t, X)(x);
}

}  // namespace ist
