#pragma once

// Plot-ready data emission: grid-string parsing, surface sampling, CSV and
// JSON writers plus a metadata sidecar.  Complex values become two real
// columns in CSV and [re, im] pairs in JSON so any plotting toolchain can
// ingest them without custom parsing.  Data files carry no timestamps; the
// same inputs always produce byte-identical output.

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "closed_form.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "verify.hpp"

namespace ist {

// One axis of an evaluation grid, "lo:hi:step" on the command line.
struct AxisSpec {
    double lo = 0.0, hi = 0.0, step = 1.0;

    void validate() const {
        if (!(step > 0.0)) throw ParameterDomain("axis step must be positive");
        if (!(hi >= lo)) throw ParameterDomain("axis needs hi >= lo");
    }
    // inclusive endpoints; the slack absorbs lo/hi that are not exact
    // multiples of step
    int count() const {
        return static_cast<int>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
    }
    double at(int i) const { return lo + i * step; }
};

inline AxisSpec parse_axis(const std::string& text) {
    AxisSpec a;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a.lo >> c1 >> a.hi >> c2 >> a.step) || c1 != ':' || c2 != ':' ||
        !(in >> std::ws).eof())
        throw ParameterDomain("axis must be lo:hi:step, got '" + text + "'");
    a.validate();
    return a;
}

struct EvalGrid {
    AxisSpec x, t;
};

// "xlo:xhi:xstep,tlo:thi:tstep"
inline EvalGrid parse_grid(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParameterDomain("grid must be xlo:xhi:xstep,tlo:thi:tstep, got '" +
                              text + "'");
    return {parse_axis(text.substr(0, comma)),
            parse_axis(text.substr(comma + 1))};
}

// Sampled surface, row-major in t (all x of the first t-row first).
struct FieldTable {
    EvalGrid grid;
    std::vector<cplx> q;
    std::vector<cplx> s;  // empty when the equation carries no auxiliary field
    int nx() const { return grid.x.count(); }
    int nt() const { return grid.t.count(); }
};

// The auxiliary field s comes from the closed form when the family has one,
// otherwise from row-wise quadrature (same engine the verifier uses); cells
// inside the quadrature's exclusion strip around a singular line are NaN.
inline FieldTable sample_field(const FieldSolution& sol, const EvalGrid& g,
                               double s_margin = 0.05) {
    g.x.validate();
    g.t.validate();
    FieldTable tb;
    tb.grid = g;
    const int nx = tb.nx(), nt = tb.nt();
    tb.q.resize(static_cast<std::size_t>(nx) * nt);
    const bool want_s = sol.spec.kind != EquationKind::RstNls;
    if (want_s) tb.s.resize(static_cast<std::size_t>(nx) * nt);
    std::vector<double> xs(nx);
    for (int i = 0; i < nx; ++i) xs[i] = g.x.at(i);
    parallel_for(nt, [&](std::size_t j) {
        const double t = g.t.at(static_cast<int>(j));
        for (int i = 0; i < nx; ++i) tb.q[j * nx + i] = sol.q(xs[i], t);
        if (!want_s) return;
        if (sol.has_s()) {
            for (int i = 0; i < nx; ++i) tb.s[j * nx + i] = sol.s(xs[i], t);
        } else {
            const auto row = detail::s_quad_row(sol, t, xs, s_margin);
            for (int i = 0; i < nx; ++i) tb.s[j * nx + i] = row[i];
        }
    });
    return tb;
}

// Columns x, t, re_q, im_q, abs_q, re_s, im_s; the s cells stay empty when
// the table has no s (the nonlocal NLS families).
inline void write_field_csv(std::ostream& out, const FieldTable& tb) {
    out << "x,t,re_q,im_q,abs_q,re_s,im_s\n";
    const int nx = tb.nx(), nt = tb.nt();
    std::string buf;
    for (int j = 0; j < nt; ++j) {
        buf.clear();
        const double t = tb.grid.t.at(j);
        for (int i = 0; i < nx; ++i) {
            const cplx q = tb.q[static_cast<std::size_t>(j) * nx + i];
            buf += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}",
                               tb.grid.x.at(i), t, q.real(), q.imag(),
                               std::abs(q));
            if (tb.s.empty()) {
                buf += ",,\n";
            } else {
                const cplx s = tb.s[static_cast<std::size_t>(j) * nx + i];
                buf += fmt::format(",{:.17g},{:.17g}\n", s.real(), s.imag());
            }
        }
        out << buf;
    }
    if (!out) throw IoFailure("failed while writing CSV stream");
}

namespace detail {

inline nlohmann::json cplx_pair(cplx c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

}  // namespace detail

inline nlohmann::json field_to_json(const FieldTable& tb) {
    nlohmann::json j;
    const int nx = tb.nx(), nt = tb.nt();
    auto& xs = j["x"] = nlohmann::json::array();
    for (int i = 0; i < nx; ++i) xs.push_back(tb.grid.x.at(i));
    auto& ts = j["t"] = nlohmann::json::array();
    for (int k = 0; k < nt; ++k) ts.push_back(tb.grid.t.at(k));
    auto& q = j["q"] = nlohmann::json::array();
    for (cplx c : tb.q) q.push_back(detail::cplx_pair(c));
    if (tb.s.empty()) {
        j["s"] = nullptr;
    } else {
        auto& s = j["s"] = nlohmann::json::array();
        for (cplx c : tb.s) s.push_back(detail::cplx_pair(c));
    }
    return j;
}

inline nlohmann::json grid_to_json(const EvalGrid& g) {
    return {{"x", {{"lo", g.x.lo}, {"hi", g.x.hi}, {"step", g.x.step}}},
            {"t", {{"lo", g.t.lo}, {"hi", g.t.hi}, {"step", g.t.step}}}};
}

// Everything a reader needs to re-run the sampling lives here, next to the
// data file, so the data file itself stays byte-stable.
inline nlohmann::json sidecar_metadata(const FieldSolution& sol,
                                       const EvalGrid& g,
                                       const std::string& format) {
    return {{"family", sol.name},
            {"model", spec_to_json(sol.spec)},
            {"grid", grid_to_json(g)},
            {"format", format},
            {"columns", {"x", "t", "re_q", "im_q", "abs_q", "re_s", "im_s"}},
            {"soliton_count", sol.soliton_count}};
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoFailure("failed while writing: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace ist
