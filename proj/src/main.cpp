// nonlocal-ist: command-line surface over the library.
//
// Verbs: eval, scatter, reconstruct, trace, verify, roundtrip.
// Exit codes: 0 pass, 2 verification failure, 1 usage or domain error.
// NONLOCAL_IST_THREADS caps internal parallelism (0 or unset = all cores).

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ist/ist.hpp"

namespace {

using namespace ist;

struct FamilyOpts {
    std::string family;
    std::string config_path;
    FamilyParams p;
};

void add_family_flags(CLI::App* cmd, FamilyOpts& o) {
    cmd->add_option("--family", o.family,
                    "solution family (see `nonlocal-ist list`)");
    cmd->add_option("--config", o.config_path,
                    "model config file, key-value or JSON");
    cmd->add_option("--q0", o.p.q0, "background amplitude");
    cmd->add_option("--q1", o.p.q1, "second amplitude, two-soliton families");
    cmd->add_option("--alpha", o.p.alpha, "boundary frequency (Gordon kinds)");
    cmd->add_option("--beta", o.p.beta,
                    "spatial carrier wavenumber (Gordon) or boost velocity (NLS)");
    cmd->add_option("--theta-plus", o.p.theta_plus, "phase of q as x -> +inf");
    cmd->add_option("--d1", o.p.d1, "first norming sign, +1 or -1");
    cmd->add_option("--d2", o.p.d2, "second norming sign, +1 or -1");
    cmd->add_option("--delta", o.p.delta, "one-soliton norming sign, +1 or -1");
}

// Config file (when given) supplies the model parameters; explicitly passed
// flags still win.  The family factory re-derives the dependent entries, so
// afterwards we check the config actually describes the same model.
FieldSolution build_family(CLI::App* cmd, const FamilyOpts& o) {
    if (o.family.empty())
        throw ParameterDomain("--family is required (try `nonlocal-ist list`)");
    FamilyParams p = o.p;
    std::optional<EquationSpec> cfg;
    if (!o.config_path.empty()) {
        cfg = load_config(o.config_path);
        if (!cmd->count("--q0")) p.q0 = cfg->q0;
        if (!cmd->count("--alpha")) p.alpha = cfg->alpha;
        if (!cmd->count("--beta")) p.beta = cfg->beta;
        if (!cmd->count("--theta-plus")) p.theta_plus = cfg->theta_plus;
    }
    FieldSolution f = make_family(family_from_name(o.family), p);
    if (cfg) {
        if (cfg->kind != f.spec.kind)
            throw ParameterDomain("config kind '" + kind_name(cfg->kind) +
                                  "' does not match family '" + f.name + "'");
        double dth =
            std::abs(wrap_angle(cfg->theta_minus) - f.spec.theta_minus);
        dth = std::min(dth, 2 * pi - dth);
        if (dth > 1e-9)
            throw ParameterDomain(
                "config theta_minus is inconsistent with the family's phase case");
    }
    return f;
}

struct OutputOpts {
    std::string path;
    std::string format = "csv";
};

void add_output_flags(CLI::App* cmd, OutputOpts& o,
                      std::vector<std::string> formats = {"csv", "json"}) {
    cmd->add_option("-o,--output", o.path, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember(formats));
}

// Data goes to the file (with a .meta.json sidecar) or to stdout; either way
// the payload bytes depend only on the inputs.
void emit(const OutputOpts& o, const std::string& payload,
          const nlohmann::json* sidecar) {
    if (o.path.empty()) {
        std::cout << payload;
        return;
    }
    write_text_file(o.path, payload);
    if (sidecar) write_text_file(o.path + ".meta.json", sidecar->dump(2) + "\n");
    std::cerr << "wrote " << o.path << "\n";
}

std::string fmt_cplx(cplx c) {
    return fmt::format("{:+.12g} {} {:.12g}i", c.real(), c.imag() < 0 ? "-" : "+",
                       std::abs(c.imag()));
}

// ---------------------------------------------------------------------------
// eval: sample a closed-form family onto a grid
// ---------------------------------------------------------------------------

int run_eval(CLI::App* cmd, const FamilyOpts& fam, const OutputOpts& out,
             const std::string& grid_str) {
    const FieldSolution f = build_family(cmd, fam);
    const EvalGrid g = parse_grid(grid_str);
    const FieldTable tb = sample_field(f, g);
    nlohmann::json meta = sidecar_metadata(f, g, out.format);
    std::string payload;
    if (out.format == "csv") {
        std::ostringstream ss;
        write_field_csv(ss, tb);
        payload = ss.str();
    } else {
        nlohmann::json j = field_to_json(tb);
        j["meta"] = meta;
        payload = j.dump() + "\n";
    }
    emit(out, payload, &meta);
    return 0;
}

// ---------------------------------------------------------------------------
// scatter: contour samples of a, b and the located discrete eigenvalues
// ---------------------------------------------------------------------------

int run_scatter(CLI::App* cmd, const FamilyOpts& fam, const OutputOpts& out,
                const std::string& xi_str, double t,
                const std::string& data_out) {
    const FieldSolution f = build_family(cmd, fam);
    const Potential pot = make_potential(f, t);
    const double q0 = f.spec.q0;

    // contour samples: the real z-axis, plus the circle |z| = q0 for the
    // circle-cut topologies; both skip small windows around the branch points
    const AxisSpec ax = parse_axis(xi_str);
    const double skip = 0.05;
    std::vector<cplx> xis;
    for (int i = 0; i < ax.count(); ++i) {
        const double xi = ax.at(i);
        if (std::abs(xi) < skip || std::abs(std::abs(xi) - q0) < skip) continue;
        xis.emplace_back(xi, 0.0);
    }
    if (f.spec.topology() == CutTopology::ImaginaryCut) {
        const int nc = 64;
        for (int m = 0; m < nc; ++m) {
            const double phi = 2 * pi * (m + 0.5) / nc;
            if (std::min(std::abs(phi), std::abs(phi - pi)) < 0.05 ||
                std::abs(phi - 2 * pi) < 0.05)
                continue;
            xis.push_back(std::polar(q0, phi));
        }
    }

    std::vector<ScatteringCoeffs> cs(xis.size());
    parallel_for(xis.size(),
                 [&](std::size_t i) { cs[i] = scattering_coeffs(pot, xis[i]); });

    const std::vector<cplx> zeros = find_eigenvalues(pot);
    std::vector<cplx> bs(zeros.size());
    parallel_for(zeros.size(),
                 [&](std::size_t j) { bs[j] = norming_b(pot, zeros[j]); });
    for (std::size_t j = 0; j < zeros.size(); ++j)
        std::cerr << "eigenvalue z_" << j + 1 << " = " << fmt_cplx(zeros[j])
                  << "   b = " << fmt_cplx(bs[j]) << "\n";
    if (zeros.empty()) std::cerr << "no discrete eigenvalues located\n";

    if (!data_out.empty()) {
        std::vector<cplx> bbs(zeros.size());
        parallel_for(zeros.size(), [&](std::size_t j) {
            bbs[j] = norming_bbar(pot, iota(f.spec, zeros[j]));
        });
        const ScatteringData data = make_reflectionless(
            f.spec, std::vector<cplx>(zeros), std::vector<cplx>(bs),
            std::move(bbs), t);
        write_text_file(data_out, data_to_json(data).dump(2) + "\n");
        std::cerr << "wrote " << data_out << "\n";
    }

    nlohmann::json meta = {{"family", f.name},
                           {"model", spec_to_json(f.spec)},
                           {"t", t},
                           {"eigenvalues", detail::cvec_to_json(zeros)},
                           {"norming_b", detail::cvec_to_json(bs)}};
    std::string payload;
    if (out.format == "csv") {
        std::string buf =
            "re_xi,im_xi,re_a,im_a,re_abar,im_abar,re_b,im_b,re_bbar,im_bbar\n";
        for (std::size_t i = 0; i < xis.size(); ++i) {
            const auto& c = cs[i];
            buf += fmt::format(
                "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                "{:.17g},{:.17g}\n",
                xis[i].real(), xis[i].imag(), c.a.real(), c.a.imag(),
                c.abar.real(), c.abar.imag(), c.b.real(), c.b.imag(),
                c.bbar.real(), c.bbar.imag());
        }
        payload = std::move(buf);
    } else {
        nlohmann::json j = meta;
        auto pack = [&](const char* key, auto proj) {
            nlohmann::json arr = nlohmann::json::array();
            for (std::size_t i = 0; i < cs.size(); ++i) {
                const cplx v = proj(cs[i]);
                arr.push_back({v.real(), v.imag()});
            }
            j[key] = std::move(arr);
        };
        j["xi"] = detail::cvec_to_json(xis);
        pack("a", [](const ScatteringCoeffs& c) { return c.a; });
        pack("abar", [](const ScatteringCoeffs& c) { return c.abar; });
        pack("b", [](const ScatteringCoeffs& c) { return c.b; });
        pack("bbar", [](const ScatteringCoeffs& c) { return c.bbar; });
        payload = j.dump() + "\n";
    }
    emit(out, payload, &meta);
    return 0;
}

// ---------------------------------------------------------------------------
// reconstruct: scattering-data JSON -> q on a grid
// ---------------------------------------------------------------------------

RecoveryRoute route_from_name(const std::string& s) {
    if (s == "left") return RecoveryRoute::LeftSum;
    if (s == "right") return RecoveryRoute::RightSum;
    if (s == "mbar") return RecoveryRoute::MbarSum;
    throw ParameterDomain("unknown route: " + s);
}

int run_reconstruct(const std::string& data_path, const OutputOpts& out,
                    const std::string& grid_str, const std::string& route) {
    const ScatteringData d =
        data_from_json(nlohmann::json::parse(read_text_file(data_path)));
    const EvalGrid g = parse_grid(grid_str);
    const int nx = g.x.count(), nt = g.t.count();
    std::vector<double> xs(nx), ts(nt);
    for (int i = 0; i < nx; ++i) xs[i] = g.x.at(i);
    for (int j = 0; j < nt; ++j) ts[j] = g.t.at(j);
    const RecoveredGrid rg = recover_q_grid(d, xs, ts, route_from_name(route));
    if (rg.singular_count)
        std::cerr << rg.singular_count
                  << " grid points sit on a singular line (written as nan)\n";

    nlohmann::json meta = {{"model", spec_to_json(d.spec)},
                           {"grid", grid_to_json(g)},
                           {"route", route},
                           {"eigenvalues", detail::cvec_to_json(d.z)},
                           {"singular_points", rg.singular_count}};
    std::string payload;
    if (out.format == "csv") {
        std::string buf = "x,t,re_q,im_q,abs_q,re_s,im_s\n";
        for (int j = 0; j < nt; ++j)
            for (int i = 0; i < nx; ++i) {
                const cplx q = rg.at(j, i);
                buf += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},,\n",
                                   xs[i], ts[j], q.real(), q.imag(), std::abs(q));
            }
        payload = std::move(buf);
    } else {
        nlohmann::json j = meta;
        j["x"] = xs;
        j["t"] = ts;
        nlohmann::json qa = nlohmann::json::array();
        for (cplx q : rg.q) qa.push_back({q.real(), q.imag()});
        j["q"] = std::move(qa);
        payload = j.dump() + "\n";
    }
    emit(out, payload, &meta);
    return 0;
}

// ---------------------------------------------------------------------------
// trace: a'(z_j) and the reflectionless constraint for hand-given eigenvalues
// ---------------------------------------------------------------------------

std::vector<cplx> parse_eigs(const std::string& text) {
    std::vector<cplx> zs;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) {
        std::istringstream items(item);
        std::string one;
        while (std::getline(items, one, ',')) {
            const auto at = one.find('@');
            if (at == std::string::npos)
                throw ParameterDomain("eigenvalue must be modulus@arg, got '" +
                                      one + "'");
            const double r = std::stod(one.substr(0, at));
            const double phi = std::stod(one.substr(at + 1));
            zs.push_back(std::polar(r, phi));
        }
    }
    if (zs.empty()) throw ParameterDomain("--eigs lists no eigenvalues");
    return zs;
}

int run_trace(const std::string& case_name, const std::string& eigs,
              const std::string& deltas_str, double q0, double alpha,
              double theta_plus, const OutputOpts& out) {
    const CaseTag tag = case_from_name(case_name);
    EquationSpec spec;
    spec.kind =
        tag.sigma == 1 ? EquationKind::SinhGordon : EquationKind::SineGordon;
    spec.sigma = tag.sigma;
    spec.q0 = q0;
    spec.alpha = alpha;
    spec.theta_plus = wrap_angle(theta_plus);
    spec.theta_minus = wrap_angle(
        (tag.sum == PhaseSum::Zero ? 0.0 : pi) - theta_plus);
    spec.validate();

    const std::vector<cplx> zs = parse_eigs(eigs);
    std::vector<int> deltas(zs.size(), 1);
    if (!deltas_str.empty()) {
        std::istringstream in(deltas_str);
        std::string one;
        std::size_t n = 0;
        while (std::getline(in, one, ',')) {
            if (n >= deltas.size())
                throw ParameterDomain("--deltas lists more signs than eigenvalues");
            deltas[n] = std::stoi(one);
            if (deltas[n] != 1 && deltas[n] != -1)
                throw ParameterDomain("delta signs must be +1 or -1");
            ++n;
        }
    }
    std::vector<cplx> bs, bbs;
    for (std::size_t j = 0; j < zs.size(); ++j) {
        const cplx d(static_cast<double>(deltas[j]), 0.0);
        if (tag.sigma == 1) {
            bs.push_back(d * iu);    // b^2 = -1 on this side of the theory
            bbs.push_back(-d * iu);
        } else {
            bs.push_back(d);         // b^2 = +1
            bbs.push_back(d);
        }
    }
    ScatteringData data =
        make_reflectionless(spec, std::vector<cplx>(zs), std::move(bs),
                            std::move(bbs), 0.0);

    std::string constraint = "satisfied";
    try {
        validate_constraint(data);
    } catch (const Error& e) {
        constraint = e.what();
    }

    nlohmann::json j = {{"case", tag.name()},
                        {"model", spec_to_json(spec)},
                        {"constraint", constraint},
                        {"eigenvalues", detail::cvec_to_json(data.z)},
                        {"involution_images", detail::cvec_to_json(data.zbar)}};
    nlohmann::json ap = nlohmann::json::array(), abp = nlohmann::json::array();
    std::string text;
    for (int m = 0; m < data.J(); ++m) {
        const cplx apz = a_prime(data, m), abz = abar_prime(data, m);
        ap.push_back({apz.real(), apz.imag()});
        abp.push_back({abz.real(), abz.imag()});
        text += fmt::format("z_{} = {}\n", m + 1, fmt_cplx(data.z[m]));
        text += fmt::format("  involution image  {}\n", fmt_cplx(data.zbar[m]));
        text += fmt::format("  a'(z_{})     = {}\n", m + 1, fmt_cplx(apz));
        text += fmt::format("  abar'(zbar_{}) = {}\n", m + 1, fmt_cplx(abz));
    }
    j["a_prime"] = std::move(ap);
    j["abar_prime"] = std::move(abp);
    text += "constraint: " + constraint + "\n";

    emit(out, out.format == "json" ? j.dump(2) + "\n" : text, &j);
    return constraint == "satisfied" ? 0 : 2;
}

// ---------------------------------------------------------------------------
// verify: residual + boundary + consistency certification of a family
// ---------------------------------------------------------------------------

int run_verify(CLI::App* cmd, const FamilyOpts& fam, const OutputOpts& out,
               const std::string& grid_str, double margin) {
    const FieldSolution f = build_family(cmd, fam);
    Grid g;
    if (!grid_str.empty()) {
        const EvalGrid eg = parse_grid(grid_str);
        g.x_lo = eg.x.lo;
        g.x_hi = eg.x.hi;
        g.hx = eg.x.step;
        g.t_lo = eg.t.lo;
        g.t_hi = eg.t.hi;
        g.ht = eg.t.step;
    }
    g.exclusion_margin = margin;
    const VerificationReport rep = verify_solution(f, g);
    const nlohmann::json j = rep.to_json();
    if (out.format == "json")
        emit(out, j.dump(2) + "\n", nullptr);
    else
        emit(out, rep.table(), nullptr);
    if (!out.path.empty())
        std::cerr << (rep.verdict ? "pass" : "FAIL") << "\n";
    return rep.verdict ? 0 : 2;
}

// ---------------------------------------------------------------------------
// roundtrip: closed form -> numerical scattering -> reconstruction -> compare
// ---------------------------------------------------------------------------

int run_roundtrip(CLI::App* cmd, const FamilyOpts& fam, const OutputOpts& out,
                  double t, const std::string& x_str, double tol) {
    const FieldSolution f = build_family(cmd, fam);
    if (!f.singular_lines.empty())
        throw ParameterDomain(
            "this family has a pole on the real axis; roundtrip needs a "
            "regular family");
    if (f.spec.kind == EquationKind::RstNls && f.spec.beta != 0.0)
        throw ParameterDomain("roundtrip does not support boosted NLS families");

    const Potential pot = make_potential(f, t);
    std::vector<cplx> zeros = find_eigenvalues(pot);
    if (zeros.empty())
        throw NoConvergence("eigenvalue search found no discrete spectrum");
    std::sort(zeros.begin(), zeros.end(), [](cplx a, cplx b) {
        return std::abs(a) > std::abs(b);
    });
    std::vector<cplx> bs(zeros.size()), bbs(zeros.size());
    parallel_for(zeros.size(), [&](std::size_t j) {
        bs[j] = norming_b(pot, zeros[j]);
        bbs[j] = norming_bbar(pot, iota(f.spec, zeros[j]));
    });
    ScatteringData data = make_reflectionless(
        f.spec, std::move(zeros), std::move(bs), std::move(bbs), t);

    const AxisSpec ax = parse_axis(x_str);
    std::vector<double> xs(ax.count());
    for (int i = 0; i < ax.count(); ++i) xs[i] = ax.at(i);
    const std::vector<double> ts = {t - 1.0, t, t + 1.0};
    const RecoveredGrid rg = recover_q_grid(data, xs, ts);

    double max_dev = 0.0;
    std::string text;
    for (std::size_t jt = 0; jt < ts.size(); ++jt) {
        double dev = 0.0;
        for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            cplx rec = rg.at(jt, ix);
            if (f.spec.beta != 0.0)  // scattering runs in the carrier gauge
                rec *= std::exp(iu * f.spec.beta * xs[ix]);
            dev = std::max(dev, std::abs(rec - f.q(xs[ix], ts[jt])));
        }
        max_dev = std::max(max_dev, dev);
        text += fmt::format("t = {:+.4g}   max |q_rec - q| = {:.3e}\n", ts[jt],
                            dev);
    }
    for (int m = 0; m < data.J(); ++m)
        text += fmt::format("z_{} = {}   b = {}\n", m + 1, fmt_cplx(data.z[m]),
                            fmt_cplx(data.b[m]));
    const bool pass = max_dev <= tol;
    text += fmt::format("roundtrip max deviation {:.3e} (tol {:.1e}): {}\n",
                        max_dev, tol, pass ? "pass" : "FAIL");

    nlohmann::json j = {{"family", f.name},
                        {"model", spec_to_json(f.spec)},
                        {"t", t},
                        {"eigenvalues", detail::cvec_to_json(data.z)},
                        {"norming_b", detail::cvec_to_json(data.b)},
                        {"max_deviation", max_dev},
                        {"tol", tol},
                        {"verdict", pass ? "pass" : "fail"}};
    emit(out, out.format == "json" ? j.dump(2) + "\n" : text, nullptr);
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "inverse scattering toolkit for the nonlocal reverse-space-time "
        "sine-Gordon / sinh-Gordon / NLS equations with nonzero boundary "
        "conditions"};
    app.require_subcommand(1);

    FamilyOpts fam_eval, fam_scatter, fam_verify, fam_round;
    OutputOpts out_eval, out_scatter, out_recon, out_trace, out_verify,
        out_round;

    auto* c_list = app.add_subcommand("list", "list the built-in families");

    auto* c_eval =
        app.add_subcommand("eval", "sample a closed-form solution onto a grid");
    add_family_flags(c_eval, fam_eval);
    add_output_flags(c_eval, out_eval);
    std::string eval_grid = "-6:6:0.05,-4:4:0.1";
    c_eval->add_option("--grid", eval_grid, "xlo:xhi:xstep,tlo:thi:tstep");

    auto* c_scatter = app.add_subcommand(
        "scatter", "direct scattering: a, b on the contour plus eigenvalues");
    add_family_flags(c_scatter, fam_scatter);
    add_output_flags(c_scatter, out_scatter);
    std::string xi_axis = "-8:8:0.25";
    double scatter_t = 0.0;
    c_scatter->add_option("--xi", xi_axis, "real-axis sample window lo:hi:step");
    c_scatter->add_option("--t", scatter_t, "time of the scattering snapshot");
    std::string scatter_data_out;
    c_scatter->add_option("--data-out", scatter_data_out,
                          "also write the located discrete data as "
                          "scattering-data JSON (reconstruct reads it)");

    auto* c_recon = app.add_subcommand(
        "reconstruct", "scattering-data JSON -> q(x, t) on a grid");
    std::string data_path, recon_grid = "-6:6:0.05,-4:4:0.1", route = "left";
    c_recon->add_option("--data", data_path, "scattering data JSON file")
        ->required();
    c_recon->add_option("--grid", recon_grid, "xlo:xhi:xstep,tlo:thi:tstep");
    c_recon->add_option("--route", route, "recovery route")
        ->check(CLI::IsMember({"left", "right", "mbar"}));
    add_output_flags(c_recon, out_recon);

    auto* c_trace = app.add_subcommand(
        "trace", "trace-formula derivatives a'(z_j) and the product constraint");
    std::string case_name, eigs, deltas;
    double tr_q0 = 2.0, tr_alpha = 1.0, tr_theta = 0.0;
    c_trace->add_option("--case", case_name, "sinh0 | sinhPi | sine0 | sinePi")
        ->required();
    c_trace->add_option("--eigs", eigs, "eigenvalues as modulus@arg;modulus@arg")
        ->required();
    c_trace->add_option("--deltas", deltas, "norming signs, comma separated");
    c_trace->add_option("--q0", tr_q0, "background amplitude");
    c_trace->add_option("--alpha", tr_alpha, "boundary frequency");
    c_trace->add_option("--theta-plus", tr_theta, "phase of q as x -> +inf")
        ->required();
    add_output_flags(c_trace, out_trace, {"text", "json"});
    out_trace.format = "text";

    auto* c_verify = app.add_subcommand(
        "verify", "certify a family: residuals, boundaries, singularity claims");
    add_family_flags(c_verify, fam_verify);
    std::string verify_grid;
    double margin = 0.1;
    c_verify->add_option("--grid", verify_grid,
                         "xlo:xhi:hx,tlo:thi:ht (default library grid)");
    c_verify->add_option("--margin", margin,
                         "exclusion margin around singular lines");
    add_output_flags(c_verify, out_verify, {"table", "json"});
    out_verify.format = "table";

    auto* c_round = app.add_subcommand(
        "roundtrip",
        "closed form -> numerical scattering -> reconstruction -> deviation");
    add_family_flags(c_round, fam_round);
    double round_t = 0.0, round_tol = 1e-8;
    std::string round_x = "-3:3:0.25";
    c_round->add_option("--t", round_t, "time of the scattering snapshot");
    c_round->add_option("--x", round_x, "comparison stations lo:hi:step");
    c_round->add_option("--tol", round_tol, "maximum admissible deviation");
    add_output_flags(c_round, out_round, {"text", "json"});
    out_round.format = "text";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 1;
    }

    try {
        if (*c_list) {
            for (SolutionId id : all_families())
                std::cout << family_name(id) << "\n";
            return 0;
        }
        if (*c_eval) return run_eval(c_eval, fam_eval, out_eval, eval_grid);
        if (*c_scatter)
            return run_scatter(c_scatter, fam_scatter, out_scatter, xi_axis,
                               scatter_t, scatter_data_out);
        if (*c_recon)
            return run_reconstruct(data_path, out_recon, recon_grid, route);
        if (*c_trace)
            return run_trace(case_name, eigs, deltas, tr_q0, tr_alpha, tr_theta,
                             out_trace);
        if (*c_verify)
            return run_verify(c_verify, fam_verify, out_verify, verify_grid,
                              margin);
        if (*c_round)
            return run_roundtrip(c_round, fam_round, out_round, round_t,
                                 round_x, round_tol);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
