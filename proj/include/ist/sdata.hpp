#pragma once

// Scattering data for reflectionless potentials: eigenvalues paired through
// the cut involution, norming constants, the trace representation of a(z),
// the algebraic constraint on eigenvalue placement, and time evolution of
// the norming constants. Serializes to JSON for the CLI round trip.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "closed_form.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"

namespace ist {

struct ScatteringData {
    EquationSpec spec;
    double t = 0.0;           // time the norming constants refer to
    std::vector<cplx> z;      // eigenvalues in the upper analyticity region
    std::vector<cplx> zbar;   // involution images, zbar_j = iota(z_j)
    std::vector<cplx> b;      // norming constants at z_j
    std::vector<cplx> bbar;   // norming constants at zbar_j
    std::vector<cplx> reflection;  // contour samples of b; empty when reflectionless
    int J() const { return static_cast<int>(z.size()); }
};

inline cplx iota(const EquationSpec& spec, cplx zj) {
    return involution(SpectralPoint{zj, spec.q0, spec.topology()}).z;
}

inline ScatteringData make_reflectionless(const EquationSpec& spec,
                                          std::vector<cplx> zs,
                                          std::vector<cplx> bs,
                                          std::vector<cplx> bbars,
                                          double t = 0.0) {
    if (zs.size() != bs.size() || zs.size() != bbars.size())
        throw ParameterDomain("eigenvalue and norming lists must have equal length");
    ScatteringData d;
    d.spec = spec;
    d.t = t;
    d.z = std::move(zs);
    d.b = std::move(bs);
    d.bbar = std::move(bbars);
    d.zbar.reserve(d.z.size());
    for (cplx zj : d.z) d.zbar.push_back(iota(spec, zj));
    return d;
}

// Exact discrete data of a closed-form family at t = 0.
inline ScatteringData discrete_data_for(const FieldSolution& f) {
    const EquationSpec& s = f.spec;
    if (s.kind == EquationKind::RstNls && s.beta != 0.0)
        throw ParameterDomain("boosted families carry no canonical discrete data");
    const double q0 = s.q0;
    std::vector<cplx> zs, bs, bbs;
    const cplx dd1(static_cast<double>(f.d1), 0.0), dd2(static_cast<double>(f.d2), 0.0);
    switch (f.id) {
        case SolutionId::SinhDark1:
        case SolutionId::SinhBright1Singular:
        case SolutionId::SpatialBcSinh:
        case SolutionId::NlsCase1Dark:
        case SolutionId::NlsCase1Singular:
            zs = {q0 * std::exp(iu * s.theta_plus)};
            bs = {dd1 * iu};
            bbs = {-dd1 * iu};
            break;
        case SolutionId::SineDark1:
        case SolutionId::SineBright1Singular:
        case SolutionId::SpatialBcSine:
        case SolutionId::NlsCase3Dark:
        case SolutionId::NlsCase3Singular:
            zs = {q0 * std::exp(iu * (s.theta_plus + pi / 2))};
            bs = {dd1};
            bbs = {dd1};
            break;
        case SolutionId::SinhTwoSoliton:
        case SolutionId::NlsCase2Two:
            zs = {iu * f.q1, -iu * q0 * q0 / f.q1};
            bs = {dd1 * iu, dd2 * iu};
            bbs = {-dd1 * iu, -dd2 * iu};
            break;
        case SolutionId::SineTwoSoliton:
        case SolutionId::NlsCase4Two:
            zs = {iu * f.q1, -iu * q0 * q0 / f.q1};
            bs = {dd1, dd2};
            bbs = {dd1, dd2};
            break;
    }
    return make_reflectionless(s, std::move(zs), std::move(bs), std::move(bbs), 0.0);
}

// --------------------------------------------------------------------------
// a(z) and its derivative at the eigenvalues
// --------------------------------------------------------------------------

inline cplx a_blaschke(const ScatteringData& d, cplx zv) {
    cplx a = 1.0;
    for (int j = 0; j < d.J(); ++j) a *= (zv - d.z[j]) / (zv - d.zbar[j]);
    return a;
}

inline cplx abar_blaschke(const ScatteringData& d, cplx zv) {
    cplx a = 1.0;
    for (int j = 0; j < d.J(); ++j) a *= (zv - d.zbar[j]) / (zv - d.z[j]);
    return a;
}

inline cplx a_prime(const ScatteringData& d, int m) {
    cplx num = 1.0, den = 1.0;
    for (int j = 0; j < d.J(); ++j) {
        if (j != m) {
            if (std::abs(d.z[m] - d.z[j]) < 1e-12)
                throw RepeatedZero("coincident eigenvalues in a'(z_m)");
            num *= d.z[m] - d.z[j];
        }
        den *= d.z[m] - d.zbar[j];
    }
    return num / den;
}

inline cplx abar_prime(const ScatteringData& d, int m) {
    cplx num = 1.0, den = 1.0;
    for (int j = 0; j < d.J(); ++j) {
        if (j != m) {
            if (std::abs(d.zbar[m] - d.zbar[j]) < 1e-12)
                throw RepeatedZero("coincident eigenvalues in abar'(zbar_m)");
            num *= d.zbar[m] - d.zbar[j];
        }
        den *= d.zbar[m] - d.z[j];
    }
    return num / den;
}

// --------------------------------------------------------------------------
// Trace formula: a(z) = prod_j (z - z_j)/(z - zbar_j)
//                       * exp[ (1/2 pi i) int_Sigma log(1 - b bbar)/(xi - z) d xi ]
// The optional bbprod callback supplies b(xi) bbar(xi) on the contour.
// --------------------------------------------------------------------------

struct TraceOptions {
    double window = 40.0;   // half-width of the line part of the contour
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

namespace detail {

inline double contour_distance(const EquationSpec& spec, cplx zv) {
    double dist = std::abs(zv.imag());
    if (spec.topology() == CutTopology::ImaginaryCut)
        dist = std::min(dist, std::abs(std::abs(zv) - spec.q0));
    return dist;
}

inline cplx log_one_minus(cplx w) {
    const cplx u = 1.0 - w;
    if (std::abs(u) < 1e-14 || (u.real() < 0.0 && std::abs(u.imag()) < 1e-14))
        throw LogBranch("1 - b bbar touches the logarithm cut on the contour");
    return std::log(u);
}

}  // namespace detail

inline cplx trace_a(const ScatteringData& d, cplx zv,
                    const std::function<cplx(cplx)>& bbprod = {},
                    const TraceOptions& opt = {}) {
    if (detail::contour_distance(d.spec, zv) < 1e-6)
        throw ContourPole("trace formula evaluated too close to the contour");
    cplx a = a_blaschke(d, zv);
    if (!bbprod) return a;
    auto cauchy = [&](cplx xi) { return detail::log_one_minus(bbprod(xi)) / (xi - zv); };
    cplx integral =
        quad_adaptive([&](double x) { return cauchy(cplx(x, 0.0)); }, -opt.window,
                      opt.window, opt.abs_tol, opt.rel_tol)
            .value;
    if (d.spec.topology() == CutTopology::ImaginaryCut) {
        const double q0 = d.spec.q0;
        auto on_circle = [&](double th) {
            const cplx xi = q0 * std::exp(iu * th);
            return cauchy(xi) * iu * xi;  // d xi = i xi d th
        };
        // upper semicircle traversed from pi to 0, lower from pi to 2 pi
        integral += quad_adaptive(on_circle, pi, 0.0, opt.abs_tol, opt.rel_tol).value;
        integral += quad_adaptive(on_circle, pi, 2 * pi, opt.abs_tol, opt.rel_tol).value;
    }
    return a * std::exp(integral / (2.0 * pi * iu));
}

// --------------------------------------------------------------------------
// Constraint on eigenvalue placement (a(0) limit):
//   prod_j z_j^2 = sign(case, J) q0^{2J} e^{2 i theta_+}
// --------------------------------------------------------------------------

inline void validate_constraint(const ScatteringData& d, double rel_tol = 1e-10) {
    const EquationSpec& s = d.spec;
    const double q0 = s.q0;
    const CutTopology cut = s.topology();
    for (cplx zj : d.z) {
        const SpectralPoint sp{zj, q0, cut};
        if (cut == CutTopology::ImaginaryCut && std::abs(std::abs(zj) - q0) < 1e-9)
            throw ImproperEigenvalue("eigenvalue sits on the circle part of the contour");
        if (classify(sp) != RegionTag::UpperAnalytic)
            throw ImproperEigenvalue("eigenvalue outside the upper analyticity region");
    }
    const CaseTag tag = s.case_tag();
    if (cut == CutTopology::ImaginaryCut && d.J() == 1)
        throw ImproperEigenvalue("a single eigenvalue cannot satisfy the circle-cut constraint");
    cplx prod = 1.0;
    for (cplx zj : d.z) prod *= zj * zj;
    const cplx want = constraint_sign(tag, d.J()) * std::pow(q0, 2 * d.J()) *
                      std::exp(2.0 * iu * s.theta_plus);
    if (std::abs(prod - want) > rel_tol * std::abs(want))
        throw ConstraintViolated("eigenvalue product violates the boundary-phase constraint");
}

// --------------------------------------------------------------------------
// Time evolution of the norming constants
// --------------------------------------------------------------------------

inline cplx evolution_factor(const EquationSpec& spec, cplx zv, double dt) {
    const SpectralPoint sp{zv, spec.q0, spec.topology()};
    if (spec.kind == EquationKind::RstNls) {
        const double c = (spec.phase_sum() == PhaseSum::Zero ? 1.0 : -1.0) *
                         spec.sigma * spec.q0 * spec.q0;
        return std::exp(-2.0 * iu * (c + two_lambda_k(sp)) * dt);
    }
    if (spec.beta != 0.0) {
        const auto [k, lam] = k_lambda(sp);
        if (std::abs(k - spec.beta / 2.0) < 1e-9)
            throw KPole("evolution factor has a pole at k = beta/2");
        return std::exp(-iu * spec.alpha * (2.0 * k - 2.0 * lam - spec.beta) * dt /
                        (2.0 * (k - spec.beta / 2.0)));
    }
    const double q2 = spec.q0 * spec.q0;
    if (spec.topology() == CutTopology::RealCut) {
        const cplx den = zv * zv + q2;
        if (std::abs(den) < 1e-9) throw KPole("evolution factor has a pole at k = 0");
        return std::exp(-2.0 * iu * spec.alpha * q2 * dt / den);
    }
    const cplx den = zv * zv - q2;
    if (std::abs(den) < 1e-9) throw KPole("evolution factor has a pole at k = 0");
    return std::exp(2.0 * iu * spec.alpha * q2 * dt / den);
}

inline ScatteringData evolve(const ScatteringData& d, double t_new) {
    ScatteringData out = d;
    const double dt = t_new - d.t;
    for (int j = 0; j < d.J(); ++j) {
        out.b[j] *= evolution_factor(d.spec, d.z[j], dt);
        out.bbar[j] /= evolution_factor(d.spec, d.zbar[j], dt);
    }
    out.t = t_new;
    return out;
}

// --------------------------------------------------------------------------
// JSON serialization
// --------------------------------------------------------------------------

namespace detail {

inline nlohmann::json cvec_to_json(const std::vector<cplx>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (cplx c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

inline std::vector<cplx> cvec_from_json(const nlohmann::json& arr) {
    std::vector<cplx> v;
    for (const auto& e : arr) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

}  // namespace detail

inline nlohmann::json data_to_json(const ScatteringData& d) {
    nlohmann::json j = {{"model", spec_to_json(d.spec)},
                        {"t", d.t},
                        {"eigenvalues", detail::cvec_to_json(d.z)},
                        {"involution_images", detail::cvec_to_json(d.zbar)},
                        {"b", detail::cvec_to_json(d.b)},
                        {"bbar", detail::cvec_to_json(d.bbar)}};
    if (!d.reflection.empty()) j["reflection"] = detail::cvec_to_json(d.reflection);
    return j;
}

inline ScatteringData data_from_json(const nlohmann::json& j) {
    ScatteringData d;
    std::map<std::string, std::string> kv;
    for (auto& [key, val] : j.at("model").items())
        kv[key] = val.is_string() ? val.get<std::string>() : val.dump();
    d.spec = spec_from_map(kv);
    d.t = j.at("t").get<double>();
    d.z = detail::cvec_from_json(j.at("eigenvalues"));
    d.b = detail::cvec_from_json(j.at("b"));
    d.bbar = detail::cvec_from_json(j.at("bbar"));
    if (j.contains("involution_images"))
        d.zbar = detail::cvec_from_json(j.at("involution_images"));
    else
        for (cplx zj : d.z) d.zbar.push_back(iota(d.spec, zj));
    if (j.contains("reflection")) d.reflection = detail::cvec_from_json(j.at("reflection"));
    if (d.z.size() != d.b.size() || d.z.size() != d.bbar.size() ||
        d.z.size() != d.zbar.size())
        throw ParameterDomain("scattering data arrays must have equal length");
    return d;
}

}  // namespace ist
