#pragma once

// Closed-form soliton families on nonzero backgrounds, stored as ratios of
// exponential sums so that evaluation stays finite for |x| up to the tail
// windows used by the scattering side (exponent shifting in RatExp).

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "expsum.hpp"
#include "model.hpp"
#include "spectral.hpp"

namespace ist {

enum class SolutionId {
    SinhDark1,
    SinhBright1Singular,
    SinhTwoSoliton,
    SineDark1,
    SineBright1Singular,
    SineTwoSoliton,
    NlsCase1Dark,
    NlsCase1Singular,
    NlsCase2Two,
    NlsCase3Dark,
    NlsCase3Singular,
    NlsCase4Two,
    SpatialBcSinh,
    SpatialBcSine,
};

inline const char* family_name(SolutionId id) {
    switch (id) {
        case SolutionId::SinhDark1: return "sinh-dark1";
        case SolutionId::SinhBright1Singular: return "sinh-bright1-singular";
        case SolutionId::SinhTwoSoliton: return "sinh-two";
        case SolutionId::SineDark1: return "sine-dark1";
        case SolutionId::SineBright1Singular: return "sine-bright1-singular";
        case SolutionId::SineTwoSoliton: return "sine-two";
        case SolutionId::NlsCase1Dark: return "nls-case1-dark";
        case SolutionId::NlsCase1Singular: return "nls-case1-singular";
        case SolutionId::NlsCase2Two: return "nls-case2-two";
        case SolutionId::NlsCase3Dark: return "nls-case3-dark";
        case SolutionId::NlsCase3Singular: return "nls-case3-singular";
        case SolutionId::NlsCase4Two: return "nls-case4-two";
        case SolutionId::SpatialBcSinh: return "spatial-sinh";
        case SolutionId::SpatialBcSine: return "spatial-sine";
    }
    throw std::logic_error("unknown SolutionId");
}

inline std::vector<SolutionId> all_families() {
    return {SolutionId::SinhDark1, SolutionId::SinhBright1Singular,
            SolutionId::SinhTwoSoliton, SolutionId::SineDark1,
            SolutionId::SineBright1Singular, SolutionId::SineTwoSoliton,
            SolutionId::NlsCase1Dark, SolutionId::NlsCase1Singular,
            SolutionId::NlsCase2Two, SolutionId::NlsCase3Dark,
            SolutionId::NlsCase3Singular, SolutionId::NlsCase4Two,
            SolutionId::SpatialBcSinh, SolutionId::SpatialBcSine};
}

inline SolutionId family_from_name(const std::string& s) {
    for (SolutionId id : all_families())
        if (s == family_name(id)) return id;
    throw ParameterDomain("unknown family name: " + s);
}

// Straight line c_x x + c_t t = rhs in the (x,t) plane.
struct AffineLine {
    double cx = 1.0, ct = 0.0, rhs = 0.0;
    double distance(double x, double t) const {
        return std::abs(cx * x + ct * t - rhs) / std::hypot(cx, ct);
    }
};

struct FieldSolution {
    EquationSpec spec;
    SolutionId id{};
    std::string name;

    RatExp rep;                   // primary representation
    bool has_fallback = false;    // exact resummation near a removable line
    RatExp fallback;
    double fallback_window = 0.0;

    std::function<cplx(double, double)> s_fn;           // empty: s undefined
    std::function<double(double, double)> den_floor;    // analytic lower bound
                                                        // on den_rel; empty if none
    std::vector<AffineLine> singular_lines;
    std::vector<AffineLine> removable_lines;
    double decay_rate = 1.0;      // e-folding rate of q - q_+ as x -> +inf
    int soliton_count = 1;
    int d1 = 1, d2 = 1;           // discrete sign data (d1 doubles as delta)
    double q1 = 0.0;              // second amplitude parameter (two-soliton families)

    bool near_removable(double x, double t) const {
        if (!has_fallback) return false;
        for (const auto& L : removable_lines)
            if (L.distance(x, t) < fallback_window) return true;
        return false;
    }
    cplx q(double x, double t) const {
        return near_removable(x, t) ? fallback.q(x, t) : rep.q(x, t);
    }
    cplx qt(double x, double t) const {
        return near_removable(x, t) ? fallback.qt(x, t) : rep.qt(x, t);
    }
    cplx qx(double x, double t) const {
        return near_removable(x, t) ? fallback.qx(x, t) : rep.qx(x, t);
    }
    // relative size of the denominator after cancellation, in [0,1]
    double den_rel(double x, double t) const { return rep.den_cancellation(x, t); }
    bool has_s() const { return static_cast<bool>(s_fn); }
    cplx s(double x, double t) const { return s_fn(x, t); }
    bool is_singular_family() const { return !singular_lines.empty(); }
};

namespace detail {

inline constexpr double kDegTol = 1e-12;

inline double clamped_cosh(double u) { return std::cosh(std::min(std::abs(u), 700.0)); }

// s = c0 + cs E/(E + d)^2 with E = e^{eax x + ebt t}, d = +-1
inline std::function<cplx(double, double)> soliton_s(double c0, double cs,
                                                     double eax, double ebt, int d) {
    RatExp r;
    r.pre = ExpTerm{cplx(cs, 0.0), 0.0, 0.0};
    r.num = ExpSum{{ExpTerm{1.0, eax, ebt}}};
    r.den = ExpSum{{ExpTerm{1.0, 2 * eax, 2 * ebt},
                    ExpTerm{cplx(2.0 * d, 0.0), eax, ebt},
                    ExpTerm{1.0, 0.0, 0.0}}};
    return [c0, r](double x, double t) { return cplx(c0, 0.0) + r.q(x, t); };
}

// q = q0 e^{i(alpha t + beta x)} (e^{i th} E + ns e^{-i th}) / (E + ds),
// E = e^{eax x + ebt t}
inline RatExp one_soliton(double q0, double alpha, double beta, double th,
                          double eax, double ebt, int ns, int ds) {
    RatExp r;
    r.pre = ExpTerm{cplx(q0, 0.0), iu * beta, iu * alpha};
    r.num = ExpSum{{ExpTerm{std::polar(1.0, th), eax, ebt},
                    ExpTerm{std::polar(1.0, -th) * cplx(double(ns), 0.0), 0.0, 0.0}}};
    r.den = ExpSum{{ExpTerm{1.0, eax, ebt}, ExpTerm{cplx(double(ds), 0.0), 0.0, 0.0}}};
    return r;
}

inline void require(bool ok, const char* what) {
    if (!ok) throw ParameterDomain(what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gordon one-soliton families (dark = regular, bright = singular along a line)
// ---------------------------------------------------------------------------

// sigma=+1, theta_- = -theta_+; spatial carrier when beta != 0
inline FieldSolution make_spatial_sinh(double q0, double alpha, double beta, double th) {
    detail::require(q0 > 0, "q0 must be positive");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(st) < detail::kDegTol)
        throw DegeneratePhase("sinh family degenerates when sin(theta+) -> 0");
    detail::require(st > 0, "eigenvalue q0 e^{i theta+} must lie off the contour in the upper region");
    double v = 0.0;  // envelope velocity
    const double vden = beta - 2 * q0 * ct;
    if (std::abs(vden) < detail::kDegTol) {
        if (alpha != 0.0)
            throw VelocityPole("beta = 2 q0 cos(theta+) makes the envelope velocity diverge");
    } else {
        v = alpha / vden;
    }
    FieldSolution f;
    f.spec.kind = EquationKind::SinhGordon;
    f.spec.sigma = +1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(-th);
    f.spec.alpha = alpha;
    f.spec.beta = beta;
    f.spec.validate();
    f.id = beta == 0.0 ? SolutionId::SinhDark1 : SolutionId::SpatialBcSinh;
    f.name = family_name(f.id);
    const double eax = 2 * q0 * st, ebt = -2 * q0 * st * v;
    f.rep = detail::one_soliton(q0, alpha, beta, th, eax, ebt, +1, +1);
    f.s_fn = detail::soliton_s(alpha * beta / 2, -4 * q0 * q0 * st * st * v, eax, ebt, +1);
    f.den_floor = [](double, double) { return 1.0; };  // den = E + 1, E real > 0
    f.decay_rate = 2 * q0 * st;
    return f;
}

inline FieldSolution make_sinh_dark1(double q0, double alpha, double th) {
    // beta = 0: velocity reduces to -alpha/(2 q0 cos th), i.e. ebt = alpha tan th
    if (std::abs(std::cos(th)) < detail::kDegTol && alpha != 0.0)
        throw TanPole("theta+ = pi/2 with alpha != 0: evolution exponent diverges");
    return make_spatial_sinh(q0, alpha, 0.0, th);
}

inline FieldSolution make_sinh_bright1(double q0, double alpha, double th) {
    detail::require(q0 > 0, "q0 must be positive");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(st) < detail::kDegTol)
        throw DegeneratePhase("sinh family degenerates when sin(theta+) -> 0");
    detail::require(st > 0, "eigenvalue q0 e^{i theta+} must lie off the contour in the upper region");
    double ebt = 0.0;
    if (std::abs(ct) < detail::kDegTol) {
        if (alpha != 0.0)
            throw TanPole("theta+ = pi/2 with alpha != 0: evolution exponent diverges");
    } else {
        ebt = alpha * st / ct;
    }
    FieldSolution f;
    f.spec.kind = EquationKind::SinhGordon;
    f.spec.sigma = +1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(-th);
    f.spec.alpha = alpha;
    f.spec.validate();
    f.id = SolutionId::SinhBright1Singular;
    f.name = family_name(f.id);
    f.d1 = -1;
    const double eax = 2 * q0 * st;
    f.rep = detail::one_soliton(q0, alpha, 0.0, th, eax, ebt, -1, -1);
    f.s_fn = detail::soliton_s(0.0, -2 * q0 * alpha * st * (std::abs(ct) < detail::kDegTol ? 0.0 : st / ct),
                               eax, ebt, -1);
    f.singular_lines = {AffineLine{eax / 2, ebt / 2, 0.0}};
    f.decay_rate = 2 * q0 * st;
    return f;
}

// sigma=-1, theta_- = pi - theta_+
inline FieldSolution make_spatial_sine(double q0, double alpha, double beta, double th) {
    detail::require(q0 > 0, "q0 must be positive");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(ct) < detail::kDegTol)
        throw DegeneratePhase("sine family degenerates when cos(theta+) -> 0");
    detail::require(ct > 0, "eigenvalue q0 e^{i(theta+ + pi/2)} must lie off the contour in the upper region");
    const double B = beta + 2 * q0 * st;
    double v = 0.0;
    if (std::abs(B) < detail::kDegTol) {
        if (alpha != 0.0)
            throw VelocityPole("beta = -2 q0 sin(theta+) makes the envelope velocity diverge");
    } else {
        v = alpha / B;
    }
    FieldSolution f;
    f.spec.kind = EquationKind::SineGordon;
    f.spec.sigma = -1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(pi - th);
    f.spec.alpha = alpha;
    f.spec.beta = beta;
    f.spec.validate();
    f.id = SolutionId::SpatialBcSine;
    f.name = family_name(f.id);
    f.d1 = -1;

    // primary representation: the four-term / two-term exponential ratio,
    // which has a removable 0/0 along x = v t
    const cplx eith = std::polar(1.0, th);
    const cplx g = alpha * (2 * q0 * eith + iu * beta) / B - iu * alpha;
    RatExp r;
    r.pre = ExpTerm{cplx(q0, 0.0), iu * beta, iu * alpha};
    r.num = ExpSum{{ExpTerm{-eith, 0.0, 2 * q0 * alpha * ct / B},
                    ExpTerm{eith, 4 * q0 * ct, -2 * q0 * alpha * ct / B},
                    ExpTerm{cplx(-2 * ct, 0.0), 2 * q0 * ct, 0.0},
                    ExpTerm{cplx(2 * ct, 0.0), 0.0, g}}};
    r.den = ExpSum{{ExpTerm{-1.0, 0.0, g},
                    ExpTerm{1.0, 4 * q0 * ct, -2 * q0 * alpha * ct / B}}};
    f.rep = r;

    // equivalent resummed form, exact on the removable line
    const double eax = 2 * q0 * ct, ebt = -2 * q0 * ct * v;
    f.fallback = detail::one_soliton(q0, alpha, beta, th, eax, ebt, -1, +1);
    f.has_fallback = true;
    f.fallback_window = 1e-2;
    f.removable_lines = {AffineLine{1.0, -v, 0.0}};

    f.s_fn = detail::soliton_s(alpha * beta / 2, -4 * q0 * q0 * ct * ct * v, eax, ebt, +1);
    f.den_floor = {};  // primary den cancels on the removable line by design
    f.decay_rate = 2 * q0 * ct;
    return f;
}

inline FieldSolution make_sine_dark1(double q0, double alpha, double th) {
    detail::require(q0 > 0, "q0 must be positive");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(ct) < detail::kDegTol)
        throw DegeneratePhase("sine family degenerates when cos(theta+) -> 0");
    detail::require(ct > 0, "eigenvalue q0 e^{i(theta+ + pi/2)} must lie off the contour in the upper region");
    double ebt = 0.0;
    if (std::abs(st) < detail::kDegTol) {
        if (alpha != 0.0)
            throw CotPole("theta+ = 0 with alpha != 0: evolution exponent diverges");
    } else {
        ebt = -alpha * ct / st;
    }
    FieldSolution f;
    f.spec.kind = EquationKind::SineGordon;
    f.spec.sigma = -1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(pi - th);
    f.spec.alpha = alpha;
    f.spec.validate();
    f.id = SolutionId::SineDark1;
    f.name = family_name(f.id);
    f.d1 = -1;
    const double eax = 2 * q0 * ct;
    f.rep = detail::one_soliton(q0, alpha, 0.0, th, eax, ebt, -1, +1);
    f.s_fn = detail::soliton_s(0.0, 2 * q0 * alpha * ct * (std::abs(st) < detail::kDegTol ? 0.0 : -ct / st),
                               eax, ebt, +1);
    f.den_floor = [](double, double) { return 1.0; };
    f.decay_rate = 2 * q0 * ct;
    return f;
}

inline FieldSolution make_sine_bright1(double q0, double alpha, double th) {
    FieldSolution f = make_sine_dark1(q0, alpha, th);  // shares all preconditions
    const double st = std::sin(th), ct = std::cos(th);
    const double eax = 2 * q0 * ct;
    const double ebt = std::abs(st) < detail::kDegTol ? 0.0 : -alpha * ct / st;
    f.id = SolutionId::SineBright1Singular;
    f.name = family_name(f.id);
    f.d1 = +1;
    f.rep = detail::one_soliton(q0, alpha, 0.0, th, eax, ebt, +1, -1);
    f.s_fn = detail::soliton_s(0.0, 2 * q0 * alpha * ct * (std::abs(st) < detail::kDegTol ? 0.0 : ct / st),
                               eax, ebt, -1);
    f.den_floor = {};
    f.singular_lines = {AffineLine{eax / 2, ebt / 2, 0.0}};
    return f;
}

// ---------------------------------------------------------------------------
// Gordon two-soliton families (circle-cut topology, J = 2)
// ---------------------------------------------------------------------------

// d1 d2 = -1: regular everywhere; d1 d2 = +1: singular along x = 0.
inline FieldSolution make_gordon_two(EquationKind kind, double q0, double q1,
                                     double alpha, int d1, int d2) {
    detail::require(kind == EquationKind::SinhGordon || kind == EquationKind::SineGordon,
                    "two-soliton backgrounds are Gordon families");
    detail::require(q0 > 0 && q1 > 0, "q0, q1 must be positive");
    detail::require(std::abs(d1) == 1 && std::abs(d2) == 1, "d1, d2 must be +-1");
    if (std::abs(q1 - q0) < 1e-9)
        throw ImproperEigenvalue("q1 = q0 puts the eigenvalue pair on the circle contour");
    detail::require(q1 > q0, "q1 > q0 is required for eigenvalues in the upper region");

    const bool sinh_kind = kind == EquationKind::SinhGordon;
    const bool regular = d1 * d2 == -1;
    const double S = q0 * q0 + q1 * q1;
    const double G = std::pow(q0, 4) - std::pow(q1, 4);
    const double dm2 = (q0 * q0 - q1 * q1) * (q0 * q0 - q1 * q1);

    FieldSolution f;
    f.spec.kind = kind;
    f.spec.sigma = sinh_kind ? +1 : -1;
    f.spec.q0 = q0;
    f.spec.theta_plus = sinh_kind ? pi / 2 : 0.0;
    f.spec.theta_minus = sinh_kind ? pi / 2 : 0.0;
    f.spec.alpha = alpha;
    f.spec.validate();
    f.id = sinh_kind ? SolutionId::SinhTwoSoliton : SolutionId::SineTwoSoliton;
    f.name = family_name(f.id);
    f.soliton_count = 2;
    f.q1 = q1;
    f.d1 = d1;
    f.d2 = d2;

    const double a1 = 2 * q0 * q0 / q1 + 2 * q1;   // E1,E2,E3 x-slope
    const cplx I2a = 2.0 * iu * alpha;
    const ExpTerm E1{1.0, a1, 4.0 * iu * q1 * q1 * alpha / S};
    const ExpTerm E2{1.0, a1, 4.0 * iu * q0 * q0 * alpha / S};
    const ExpTerm E3{1.0, a1, I2a};
    const ExpTerm E4{1.0, 4 * q0 * q0 / q1, I2a};
    const ExpTerm E5{1.0, 4 * q1, I2a};
    const cplx bt67 = iu * alpha * (q0 * q0 + 3 * q1 * q1) / S;
    const cplx bt89 = iu * alpha * (3 * q0 * q0 + q1 * q1) / S;
    const double ax68 = q0 * q0 / q1 + 3 * q1;
    const double ax79 = 3 * q0 * q0 / q1 + q1;
    const ExpTerm E6{1.0, ax68, bt67};
    const ExpTerm E7{1.0, ax79, bt67};
    const ExpTerm E8{1.0, ax68, bt89};
    const ExpTerm E9{1.0, ax79, bt89};

    auto scaled = [](cplx c, const ExpTerm& e) { return ExpTerm{c * e.c, e.ax, e.bt}; };

    const double e3num = (regular ? -2.0 : 2.0) * q0 * q1 * dm2;
    ExpSum num{{scaled(-4 * std::pow(q0, 5) * q1, E1),
                scaled(-4 * q0 * std::pow(q1, 5), E2),
                scaled(e3num, E3),
                scaled(q0 * q1 * S * S, E4),
                scaled(q0 * q1 * S * S, E5)}};
    const double sgn = (sinh_kind ? 1.0 : -1.0) * d1;
    const double cp = 2 * q0 * q0 * G, cq = 2 * q1 * q1 * G;
    if (regular) {
        num.terms.push_back(scaled(sgn * cp, E6));
        num.terms.push_back(scaled(sgn * cp, E7));
        num.terms.push_back(scaled(-sgn * cq, E8));
        num.terms.push_back(scaled(-sgn * cq, E9));
    } else {
        num.terms.push_back(scaled(sgn * cp, E6));
        num.terms.push_back(scaled(-sgn * cp, E7));
        num.terms.push_back(scaled(sgn * cq, E8));
        num.terms.push_back(scaled(-sgn * cq, E9));
    }
    const double e3den = (regular ? 2.0 : -2.0) * dm2;
    ExpSum den{{scaled(-4 * q0 * q0 * q1 * q1 * q1, E1),
                scaled(-4 * q0 * q0 * q1 * q1 * q1, E2),
                scaled(q1 * e3den, E3),
                scaled(q1 * S * S, E4),
                scaled(q1 * S * S, E5)}};

    f.rep.pre = ExpTerm{sinh_kind ? iu : cplx(1.0, 0.0), 0.0, iu * alpha};
    f.rep.num = num;
    f.rep.den = den;

    if (regular) {
        // |den|/q1 >= S^2 (A-B)^2 + 4 (q0^2-q1^2)^2 AB with A = e^{2 q0^2 x/q1},
        // B = e^{2 q1 x}; normalize by the term-wise absolute sum.
        const double gap = 2 * (q1 - q0 * q0 / q1);
        f.den_floor = [S, dm2, q0, q1, gap](double x, double) {
            const double r = 2 * detail::clamped_cosh(gap * x);
            return (S * S * (r - 2) + 4 * dm2) /
                   (8 * q0 * q0 * q1 * q1 + 2 * dm2 + S * S * r);
        };
    } else {
        f.singular_lines = {AffineLine{1.0, 0.0, 0.0}};
    }
    f.decay_rate = q1 - q0 * q0 / q1;
    return f;
}

// ---------------------------------------------------------------------------
// RST-NLS families
// ---------------------------------------------------------------------------

// case 1: sigma=+1, theta_+ + theta_- = 0, alpha = 2 q0^2
inline FieldSolution make_nls_case1(double q0, double th, int delta) {
    detail::require(q0 > 0, "q0 must be positive");
    detail::require(std::abs(delta) == 1, "delta must be +-1");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(st) < detail::kDegTol)
        throw DegeneratePhase("case-1 family degenerates when sin(theta+) -> 0");
    detail::require(st > 0, "eigenvalue q0 e^{i theta+} must lie in the upper region");
    FieldSolution f;
    f.spec.kind = EquationKind::RstNls;
    f.spec.sigma = +1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(-th);
    f.spec.alpha = 2 * q0 * q0;
    f.spec.validate();
    const double s2 = std::sin(2 * th);
    const cplx pre_bt = 2.0 * iu * q0 * q0;
    if (delta == 1) {
        f.id = SolutionId::NlsCase1Dark;
        // q = q0 e^{2i q0^2 t} (e^{i th} A + e^{-i th} B)/(A + B),
        // A = e^{2 q0 sin(th) x}, B = e^{2 q0^2 sin(2 th) t}
        f.rep.pre = ExpTerm{cplx(q0, 0.0), 0.0, pre_bt};
        f.rep.num = ExpSum{{ExpTerm{std::polar(1.0, th), 2 * q0 * st, 0.0},
                            ExpTerm{std::polar(1.0, -th), 0.0, 2 * q0 * q0 * s2}}};
        f.rep.den = ExpSum{{ExpTerm{1.0, 2 * q0 * st, 0.0},
                            ExpTerm{1.0, 0.0, 2 * q0 * q0 * s2}}};
        f.den_floor = [](double, double) { return 1.0; };
    } else {
        f.id = SolutionId::NlsCase1Singular;
        // coth profile along x - 2 q0 cos(th) t = 0
        const double eax = 2 * q0 * st, ebt = -2 * q0 * q0 * s2;
        f.rep = detail::one_soliton(q0, 0.0, 0.0, th, eax, ebt, -1, -1);
        f.rep.pre.bt = pre_bt;
        f.singular_lines = {AffineLine{1.0, -2 * q0 * ct, 0.0}};
    }
    f.name = family_name(f.id);
    f.d1 = delta;
    f.decay_rate = 2 * q0 * st;
    return f;
}

// case 3: sigma=-1, theta_+ + theta_- = pi, alpha = 2 q0^2
inline FieldSolution make_nls_case3(double q0, double th, int delta) {
    detail::require(q0 > 0, "q0 must be positive");
    detail::require(std::abs(delta) == 1, "delta must be +-1");
    const double st = std::sin(th), ct = std::cos(th);
    if (std::abs(ct) < detail::kDegTol)
        throw DegeneratePhase("case-3 family degenerates when cos(theta+) -> 0");
    detail::require(ct > 0, "eigenvalue q0 e^{i(theta+ + pi/2)} must lie in the upper region");
    FieldSolution f;
    f.spec.kind = EquationKind::RstNls;
    f.spec.sigma = -1;
    f.spec.q0 = q0;
    f.spec.theta_plus = wrap_angle(th);
    f.spec.theta_minus = wrap_angle(pi - th);
    f.spec.alpha = 2 * q0 * q0;
    f.spec.validate();
    const double s2 = std::sin(2 * th);
    const double eax = 2 * q0 * ct, ebt = 2 * q0 * q0 * s2;  // E = e^{2 q0 ct (x + 2 q0 st t)}
    const cplx pre_bt = 2.0 * iu * q0 * q0;
    if (delta == -1) {
        f.id = SolutionId::NlsCase3Dark;
        f.rep = detail::one_soliton(q0, 0.0, 0.0, th, eax, ebt, -1, +1);
        f.rep.pre.bt = pre_bt;
        f.den_floor = [](double, double) { return 1.0; };
    } else {
        f.id = SolutionId::NlsCase3Singular;
        // (e^{i th} E^2 + 2 cos(th) E + e^{-i th})/(E^2 - 1)
        f.rep.pre = ExpTerm{cplx(q0, 0.0), 0.0, pre_bt};
        f.rep.num = ExpSum{{ExpTerm{std::polar(1.0, th), 2 * eax, 2 * ebt},
                            ExpTerm{cplx(2 * ct, 0.0), eax, ebt},
                            ExpTerm{std::polar(1.0, -th), 0.0, 0.0}}};
        f.rep.den = ExpSum{{ExpTerm{1.0, 2 * eax, 2 * ebt}, ExpTerm{-1.0, 0.0, 0.0}}};
        f.singular_lines = {AffineLine{1.0, 2 * q0 * st, 0.0}};
    }
    f.name = family_name(f.id);
    f.d1 = delta;
    f.decay_rate = 2 * q0 * ct;
    return f;
}

namespace detail {

// shared trig/hyperbolic building blocks for the circle-cut NLS pairs
struct NlsTwoParts {
    double w, u, S;
    ExpSum cosw, sinw, coshu, sinhu, ep, em;
};

inline NlsTwoParts nls_two_parts(double q0, double q1) {
    NlsTwoParts p;
    p.w = (std::pow(q0, 4) - std::pow(q1, 4)) / (q1 * q1);
    p.u = (q0 * q0 - q1 * q1) / q1;
    p.S = q0 * q0 + q1 * q1;
    const cplx iw = iu * p.w;
    p.cosw = ExpSum{{ExpTerm{0.5, 0.0, iw}, ExpTerm{0.5, 0.0, -iw}}};
    p.sinw = ExpSum{{ExpTerm{cplx(0.0, -0.5), 0.0, iw}, ExpTerm{cplx(0.0, 0.5), 0.0, -iw}}};
    p.coshu = ExpSum{{ExpTerm{0.5, p.u, 0.0}, ExpTerm{0.5, -p.u, 0.0}}};
    p.sinhu = ExpSum{{ExpTerm{0.5, p.u, 0.0}, ExpTerm{-0.5, -p.u, 0.0}}};
    p.ep = ExpSum{{ExpTerm{1.0, 0.0, -iw}}};  // e^{i (q1^4-q0^4) t / q1^2}
    p.em = ExpSum{{ExpTerm{1.0, 0.0, iw}}};
    return p;
}

inline std::function<double(double, double)> cosh_floor(double q0, double q1, double u) {
    // |den|/q1 >= S cosh(u x) - 2 q0 q1 > 0; abs-sum normalization S cosh + 2 q0 q1
    const double S = q0 * q0 + q1 * q1;
    return [S, q0, q1, u](double x, double) {
        const double c = clamped_cosh(u * x);
        return (S * c - 2 * q0 * q1) / (S * c + 2 * q0 * q1);
    };
}

}  // namespace detail

// case 2: sigma=+1, theta_+ = theta_- = pi/2, alpha = -2 q0^2
inline FieldSolution make_nls_case2(double q0, double q1, int d1, int d2) {
    detail::require(q0 > 0 && q1 > 0, "q0, q1 must be positive");
    detail::require(std::abs(d1) == 1 && std::abs(d2) == 1, "d1, d2 must be +-1");
    if (std::abs(q1 - q0) < 1e-9)
        throw ImproperEigenvalue("q1 = q0 puts the eigenvalue pair on the circle contour");
    detail::require(q1 > q0, "q1 > q0 is required for eigenvalues in the upper region");
    FieldSolution f;
    f.spec.kind = EquationKind::RstNls;
    f.spec.sigma = +1;
    f.spec.q0 = q0;
    f.spec.theta_plus = pi / 2;
    f.spec.theta_minus = pi / 2;
    f.spec.alpha = -2 * q0 * q0;
    f.spec.validate();
    f.id = SolutionId::NlsCase2Two;
    f.name = family_name(f.id);
    f.soliton_count = 2;
    f.q1 = q1;
    f.d1 = d1;
    f.d2 = d2;

    const auto p = detail::nls_two_parts(q0, q1);
    const double A = std::pow(q0, 4), B = std::pow(q1, 4);
    f.rep.pre = ExpTerm{1.0, 0.0, -2.0 * iu * q0 * q0};
    const double c1 = q0 * q1 * p.S;
    if (d1 == 1 && d2 == -1) {
        f.rep.num = iu * (A + B) * p.cosw + iu * c1 * p.coshu + (A - B) * p.sinw;
        f.rep.den = q1 * (2 * q0 * q1 * p.cosw + p.S * p.coshu);
    } else if (d1 == -1 && d2 == 1) {
        f.rep.num = -iu * (A + B) * p.cosw + iu * c1 * p.coshu + (B - A) * p.sinw;
        f.rep.den = q1 * (-2 * q0 * q1 * p.cosw + p.S * p.coshu);
    } else if (d1 == 1 && d2 == 1) {
        f.rep.num = iu * (-A * p.ep + B * p.em + c1 * p.sinhu);
        f.rep.den = q1 * (2.0 * iu * q0 * q1 * p.sinw + p.S * p.sinhu);
    } else {
        f.rep.num = iu * (A - B) * p.cosw + iu * c1 * p.sinhu + (A + B) * p.sinw;
        f.rep.den = q1 * (-2.0 * iu * q0 * q1 * p.sinw + p.S * p.sinhu);
    }
    if (d1 * d2 == -1) {
        f.den_floor = detail::cosh_floor(q0, q1, p.u);
    } else {
        f.singular_lines = {AffineLine{1.0, 0.0, 0.0}};
    }
    f.decay_rate = (q1 * q1 - q0 * q0) / q1;
    return f;
}

// case 4: sigma=-1, theta_+ = theta_- = 0, alpha = -2 q0^2
inline FieldSolution make_nls_case4(double q0, double q1, int d1, int d2) {
    detail::require(q0 > 0 && q1 > 0, "q0, q1 must be positive");
    detail::require(std::abs(d1) == 1 && std::abs(d2) == 1, "d1, d2 must be +-1");
    if (std::abs(q1 - q0) < 1e-9)
        throw ImproperEigenvalue("q1 = q0 puts the eigenvalue pair on the circle contour");
    detail::require(q1 > q0, "q1 > q0 is required for eigenvalues in the upper region");
    FieldSolution f;
    f.spec.kind = EquationKind::RstNls;
    f.spec.sigma = -1;
    f.spec.q0 = q0;
    f.spec.theta_plus = 0.0;
    f.spec.theta_minus = 0.0;
    f.spec.alpha = -2 * q0 * q0;
    f.spec.validate();
    f.id = SolutionId::NlsCase4Two;
    f.name = family_name(f.id);
    f.soliton_count = 2;
    f.q1 = q1;
    f.d1 = d1;
    f.d2 = d2;

    const auto p = detail::nls_two_parts(q0, q1);
    const double A = std::pow(q0, 4), B = std::pow(q1, 4);
    f.rep.pre = ExpTerm{1.0, 0.0, -2.0 * iu * q0 * q0};
    const double c1 = q0 * q1 * p.S;
    if (d1 == 1 && d2 == -1) {
        f.rep.num = -A * p.ep + (-B) * p.em + c1 * p.coshu;
        f.rep.den = q1 * (-2 * q0 * q1 * p.cosw + p.S * p.coshu);
    } else if (d1 == -1 && d2 == 1) {
        f.rep.num = A * p.ep + B * p.em + c1 * p.coshu;
        f.rep.den = q1 * (2 * q0 * q1 * p.cosw + p.S * p.coshu);
    } else if (d1 == 1 && d2 == 1) {
        f.rep.num = A * p.ep + (-B) * p.em + c1 * p.sinhu;
        f.rep.den = q1 * (-2.0 * iu * q0 * q1 * p.sinw + p.S * p.sinhu);
    } else {
        f.rep.num = -A * p.ep + B * p.em + c1 * p.sinhu;
        f.rep.den = q1 * (2.0 * iu * q0 * q1 * p.sinw + p.S * p.sinhu);
    }
    if (d1 * d2 == -1) {
        f.den_floor = detail::cosh_floor(q0, q1, p.u);
    } else {
        f.singular_lines = {AffineLine{1.0, 0.0, 0.0}};
    }
    f.decay_rate = (q1 * q1 - q0 * q0) / q1;
    return f;
}

// ---------------------------------------------------------------------------
// Galilean boost: q(x,t) -> q(x + 2 beta t, t) e^{i(beta x + beta^2 t)}
// ---------------------------------------------------------------------------

inline FieldSolution galilean_boost(const FieldSolution& f0, double beta) {
    detail::require(f0.spec.kind == EquationKind::RstNls,
                    "the Galilean boost applies to the RST-NLS families");
    if (beta == 0.0) return f0;
    FieldSolution f = f0;
    f.name = f0.name + "+boost";
    f.spec.alpha = f0.spec.alpha + beta * beta;  // carrier picks up beta^2
    f.spec.beta = beta;

    auto boost_sum = [beta](ExpSum& s) {
        for (auto& tm : s.terms) tm.bt += 2.0 * beta * tm.ax;
    };
    auto boost_rep = [&](RatExp& r) {
        r.pre.bt += 2.0 * beta * r.pre.ax + iu * beta * beta;
        r.pre.ax += iu * beta;
        boost_sum(r.num);
        boost_sum(r.den);
    };
    boost_rep(f.rep);
    if (f.has_fallback) boost_rep(f.fallback);
    auto boost_lines = [beta](std::vector<AffineLine>& ls) {
        for (auto& L : ls) L.ct += 2.0 * beta * L.cx;
    };
    boost_lines(f.singular_lines);
    boost_lines(f.removable_lines);
    if (f0.den_floor) {
        auto base = f0.den_floor;
        f.den_floor = [base, beta](double x, double t) { return base(x + 2 * beta * t, t); };
    }
    return f;
}

// ---------------------------------------------------------------------------
// Uniform construction entry point (CLI / tests)
// ---------------------------------------------------------------------------

struct FamilyParams {
    double q0 = 2.0;
    double q1 = 4.0;          // second amplitude, two-soliton families
    double alpha = 1.0;       // Gordon boundary frequency
    double beta = 0.0;        // spatial carrier (Gordon) or boost (NLS)
    double theta_plus = pi / 3;
    int d1 = 1, d2 = -1;      // two-soliton signs
    int delta = 1;            // one-soliton sign
};

inline FieldSolution make_family(SolutionId id, const FamilyParams& p) {
    switch (id) {
        case SolutionId::SinhDark1:
            if (p.delta != 1) throw ParameterDomain("sinh-dark1 has delta = +1; delta = -1 is sinh-bright1-singular");
            return make_sinh_dark1(p.q0, p.alpha, p.theta_plus);
        case SolutionId::SinhBright1Singular:
            return make_sinh_bright1(p.q0, p.alpha, p.theta_plus);
        case SolutionId::SinhTwoSoliton:
            return make_gordon_two(EquationKind::SinhGordon, p.q0, p.q1, p.alpha, p.d1, p.d2);
        case SolutionId::SineDark1:
            return make_sine_dark1(p.q0, p.alpha, p.theta_plus);
        case SolutionId::SineBright1Singular:
            return make_sine_bright1(p.q0, p.alpha, p.theta_plus);
        case SolutionId::SineTwoSoliton:
            return make_gordon_two(EquationKind::SineGordon, p.q0, p.q1, p.alpha, p.d1, p.d2);
        case SolutionId::NlsCase1Dark: {
            auto f = make_nls_case1(p.q0, p.theta_plus, +1);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::NlsCase1Singular: {
            auto f = make_nls_case1(p.q0, p.theta_plus, -1);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::NlsCase2Two: {
            auto f = make_nls_case2(p.q0, p.q1, p.d1, p.d2);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::NlsCase3Dark: {
            auto f = make_nls_case3(p.q0, p.theta_plus, -1);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::NlsCase3Singular: {
            auto f = make_nls_case3(p.q0, p.theta_plus, +1);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::NlsCase4Two: {
            auto f = make_nls_case4(p.q0, p.q1, p.d1, p.d2);
            return galilean_boost(f, p.beta);
        }
        case SolutionId::SpatialBcSinh:
            return make_spatial_sinh(p.q0, p.alpha, p.beta, p.theta_plus);
        case SolutionId::SpatialBcSine:
            return make_spatial_sine(p.q0, p.alpha, p.beta, p.theta_plus);
    }
    throw std::logic_error("unknown SolutionId");
}

}  // namespace ist
