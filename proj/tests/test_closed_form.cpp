#include <catch2/catch_amalgamated.hpp>

#include "ist/closed_form.hpp"

using namespace ist;
using C = cplx;

namespace {

// relative comparison against an independently computed reference value
void chk(const char* what, C got, C want, double tol = 1e-13) {
    INFO(what << ": got (" << got.real() << "," << got.imag() << ") want ("
              << want.real() << "," << want.imag() << ")");
    REQUIRE(std::abs(got - want) / std::max(1.0, std::abs(want)) < tol);
}

const double x1 = 0.31, t1 = 0.21;
const double x2 = -1.13, t2 = 0.77;
const double th = pi / 3;

}  // namespace

TEST_CASE("one-soliton gordon families at reference points", "[closed_form]") {
    auto shd = make_sinh_dark1(2, 1, th);
    chk("sinh-dark1 q(a)", shd.q(x1, t1), C(0.7555560426262844087261, 1.252244833167331149221));
    chk("sinh-dark1 q(b)", shd.q(x2, t2), C(1.753914559722020625147, -0.3722753304679992379518));
    chk("sinh-dark1 s(a)", shd.s(x1, t1), C(0.9305089721283156372544, 0));
    chk("sinh-dark1 s(b)", shd.s(x2, t2), C(0.3925973977600262520379, 0));

    auto shb = make_sinh_bright1(2, 1, th);
    chk("sinh-bright1 q(a)", shb.q(x1, t1), C(0.3920474807200104448035, 2.957717260112397002212));
    chk("sinh-bright1 q(b)", shb.q(x2, t2), C(2.121199619829486721829, -0.7510492364690343439738));
    chk("sinh-bright1 s(a)", shb.s(x1, t1), C(-2.450896308952845834139, 0));
    chk("sinh-bright1 s(b)", shb.s(x2, t2), C(-0.5317813913827392329625, 0));

    auto snd = make_sine_dark1(2, 1, th);
    chk("sine-dark1 q(a)", snd.q(x1, t1), C(-0.1220968417354256004102, 1.744933096159366557302));
    chk("sine-dark1 q(b)", snd.q(x2, t2), C(-1.833619333533123024009, 0.6346246051963077389379));
    chk("sine-dark1 s(a)", snd.s(x1, t1), C(-0.2714414747699394344997, 0));
    chk("sine-dark1 s(b)", snd.s(x2, t2), C(-0.06786514262331405109067, 0));

    auto snb = make_sine_bright1(2, 1, th);
    chk("sine-bright1 q(a)", snb.q(x1, t1), C(3.641779462158461468662, 2.547174891925226307296));
    chk("sine-bright1 q(b)", snb.q(x2, t2), C(-2.026595255517657137604, 0.4475019655887377066402));
    chk("sine-bright1 s(a)", snb.s(x1, t1), C(4.546823197167417808269, 0));
    chk("sine-bright1 s(b)", snb.s(x2, t2), C(0.08872324574700438609587, 0));
}

TEST_CASE("two-soliton gordon families at reference points", "[closed_form]") {
    auto sh2a = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, 1, -1);
    chk("sinh-two(1,-1) q(a)", sh2a.q(x1, t1), C(-0.4184851921163319962286, 2.764270876623168776424));
    chk("sinh-two(1,-1) q(b)", sh2a.q(x2, t2), C(-1.40265691165540469314, 1.569937637276246955782));
    auto sh2b = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, -1, 1);
    chk("sinh-two(-1,1) q(a)", sh2b.q(x1, t1), C(-0.4116506201473185686755, -0.7644052647503317848036));
    chk("sinh-two(-1,1) q(b)", sh2b.q(x2, t2), C(-1.380831517369158998075, 1.288114157502161805141));

    auto sn2a = make_gordon_two(EquationKind::SineGordon, 2, 4, 1, 1, -1);
    chk("sine-two(1,-1) q(a)", sn2a.q(x1, t1), C(-0.7644052647503317848036, 0.4116506201473185686755));
    chk("sine-two(1,-1) q(b)", sn2a.q(x2, t2), C(1.288114157502161805141, 1.380831517369158998075));
    auto sn2b = make_gordon_two(EquationKind::SineGordon, 2, 4, 1, -1, 1);
    chk("sine-two(-1,1) q(a)", sn2b.q(x1, t1), C(2.764270876623168776424, 0.4184851921163319962286));
    chk("sine-two(-1,1) q(b)", sn2b.q(x2, t2), C(1.569937637276246955782, 1.40265691165540469314));

    // singular sign pairs
    auto sh2s = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, 1, 1);
    chk("sinh-two(1,1) q(a)", sh2s.q(x1, t1), C(-0.3045792000650486264878, -0.8190243413345743792654));
    auto sh2t = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, -1, -1);
    chk("sinh-two(-1,-1) q(a)", sh2t.q(x1, t1), C(-1.044216560251518973914, 4.661652788885200772677));
    auto sn2s = make_gordon_two(EquationKind::SineGordon, 2, 4, 1, 1, 1);
    chk("sine-two(1,1) q(a)", sn2s.q(x1, t1), C(4.661652788885200772677, 1.044216560251518973914));
    auto sn2t = make_gordon_two(EquationKind::SineGordon, 2, 4, 1, -1, -1);
    chk("sine-two(-1,-1) q(a)", sn2t.q(x1, t1), C(-0.8190243413345743792654, 0.3045792000650486264878));
}

TEST_CASE("nls families at reference points", "[closed_form]") {
    auto n1d = make_nls_case1(2, th, 1);
    chk("nls1-dark q(a)", n1d.q(x1, t1), C(0.2151350884559635465663, 1.02957987371228744908));
    chk("nls1-dark q(b)", n1d.q(x2, t2), C(0.7796392178166672990495, -1.841469139850080021839));
    auto n1s = make_nls_case1(2, th, -1);
    chk("nls1-sing q(a)", n1s.q(x1, t1), C(9.03685068082117633077, 1.996791489333933701826));
    chk("nls1-sing q(b)", n1s.q(x2, t2), C(0.7795573288813739624699, -1.84213053613477731673));
    auto n3d = make_nls_case3(2, th, -1);
    chk("nls3-dark q(a)", n3d.q(x1, t1), C(-1.806403350788419970356, 0.583485262229089158849));
    chk("nls3-dark q(b)", n3d.q(x2, t2), C(1.117590968108857078692, 1.606904614070479672494));
    auto n3s = make_nls_case3(2, th, 1);
    chk("nls3-sing q(a)", n3s.q(x1, t1), C(-1.862020438782848528963, 1.090755981933024428609));
    chk("nls3-sing q(b)", n3s.q(x2, t2), C(1.301393787506585496203, 1.584147580908005707116));

    chk("nls2(1,-1) q(a)", make_nls_case2(2, 4, 1, -1).q(x1, t1),
        C(-0.7001079686651320110232, 0.1149397257660113214852));
    chk("nls2(-1,1) q(a)", make_nls_case2(2, 4, -1, 1).q(x1, t1),
        C(2.776986025048404116539, -0.3156729579429624228692));
    chk("nls2(1,1) q(a)", make_nls_case2(2, 4, 1, 1).q(x1, t1),
        C(4.775440484787953806479, -0.5200773818351553104397));
    chk("nls2(-1,-1) q(a)", make_nls_case2(2, 4, -1, -1).q(x1, t1),
        C(-0.7952495586996579425882, 0.1191473028394179939433));
    chk("nls4(1,-1) q(a)", make_nls_case4(2, 4, 1, -1).q(x1, t1),
        C(-0.3156729579429624228692, -2.776986025048404116539));
    chk("nls4(-1,1) q(a)", make_nls_case4(2, 4, -1, 1).q(x1, t1),
        C(0.1149397257660113214852, 0.7001079686651320110232));
    chk("nls4(1,1) q(a)", make_nls_case4(2, 4, 1, 1).q(x1, t1),
        C(0.1191473028394179939433, 0.7952495586996579425882));
    chk("nls4(-1,-1) q(a)", make_nls_case4(2, 4, -1, -1).q(x1, t1),
        C(-0.5200773818351553104397, -4.775440484787953806479));
}

TEST_CASE("spatial-carrier families and the galilean boost", "[closed_form]") {
    auto bsh = make_spatial_sinh(2, 1, 0.3, th);
    chk("spatial-sinh q(a)", bsh.q(x1, t1), C(0.6259135768179019091293, 1.349262464799501541546));
    chk("spatial-sinh q(b)", bsh.q(x2, t2), C(1.505629480849313306634, -0.8806972102802976296391));
    chk("spatial-sinh s(a)", bsh.s(x1, t1), C(1.201601762022467217255, 0));
    chk("spatial-sinh s(b)", bsh.s(x2, t2), C(0.7132072295305461846854, 0));
    auto bsn = make_spatial_sine(2, 1, 0.3, th);
    chk("spatial-sine q(a)", bsn.q(x1, t1), C(-0.2792831420770738672634, 1.727407918200908085301));
    chk("spatial-sine q(b)", bsn.q(x2, t2), C(-1.514379998421906506902, 1.210033245534202825993));
    chk("spatial-sine s(a)", bsn.s(x1, t1), C(-0.09921293487822899507783, 0));
    chk("spatial-sine s(b)", bsn.s(x2, t2), C(0.08558283227357657240342, 0));

    auto nb = galilean_boost(make_nls_case3(2, th, -1), 0.3);
    chk("nls3+boost q(a)", nb.q(x1, t1), C(-1.870191879535281156301, 0.4222998237071973340841));
    chk("nls3+boost q(b)", nb.q(x2, t2), C(1.553659856551698870681, 1.231016959279161302565));
    REQUIRE(nb.spec.beta == Catch::Approx(0.3));
}

TEST_CASE("spatial-sine fallback agrees with the long form", "[closed_form]") {
    auto bsn = make_spatial_sine(2, 1, 0.3, th);
    REQUIRE(bsn.has_fallback);
    // away from the removable line both representations coincide
    REQUIRE(std::abs(bsn.rep.q(0.8, -0.9) - bsn.fallback.q(0.8, -0.9)) < 1e-13);
    // on the line the long form is 0/0 and the compact form takes over
    const double vbar = 1.0 / (0.3 + 4 * std::sin(th));
    REQUIRE(bsn.near_removable(vbar * 0.7, 0.7));
    REQUIRE(std::abs(bsn.q(vbar * 0.7, 0.7) - bsn.fallback.q(vbar * 0.7, 0.7)) == 0.0);
}

TEST_CASE("background recovery at large x", "[closed_form]") {
    auto qp = [&](const FieldSolution& f, double X, double T) {
        return f.spec.q0 *
               std::exp(iu * (f.spec.alpha * T + f.spec.beta * X + f.spec.theta_plus));
    };
    auto shd = make_sinh_dark1(2, 1, th);
    auto sh2 = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, 1, -1);
    auto bsh = make_spatial_sinh(2, 1, 0.3, th);
    auto bsn = make_spatial_sine(2, 1, 0.3, th);
    for (const auto* f : {&shd, &sh2, &bsh, &bsn})
        REQUIRE(std::abs(f->q(40, 0.4) - qp(*f, 40, 0.4)) < 1e-12);
    // nls two-soliton at x = +60: exponents reach e^{240} internally
    REQUIRE(std::abs(make_nls_case2(2, 4, 1, -1).q(60, 0.4) -
                     2.0 * std::exp(iu * (-8.0 * 0.4 + pi / 2))) < 1e-12);
}

TEST_CASE("denominator floors bound the measured cancellation", "[closed_form]") {
    for (auto mk : {std::pair{1, -1}, std::pair{-1, 1}}) {
        auto f = make_gordon_two(EquationKind::SinhGordon, 2, 4, 1, mk.first, mk.second);
        REQUIRE(static_cast<bool>(f.den_floor));
        double worst = 1.0;
        for (double X = -6; X <= 6; X += 0.37)
            for (double T = -4; T <= 4; T += 0.41)
                worst = std::min(worst, f.den_rel(X, T) - f.den_floor(X, T) * (1 - 1e-12));
        INFO("floor margin for " << f.name << " = " << worst);
        REQUIRE(worst >= 0.0);
    }
}

TEST_CASE("family registry and parameter guards", "[closed_form]") {
    for (SolutionId id : all_families())
        REQUIRE(family_from_name(family_name(id)) == id);
    REQUIRE_THROWS_AS(family_from_name("unknown"), ParameterDomain);

    // the amplitude ordering q1 > q0 > 0 is mandatory
    REQUIRE_THROWS_AS(make_gordon_two(EquationKind::SinhGordon, 2, 2, 1, 1, -1),
                      ImproperEigenvalue);
    REQUIRE_THROWS_AS(make_gordon_two(EquationKind::SinhGordon, 2, 1.5, 1, 1, -1),
                      ParameterDomain);

    FamilyParams p;  // defaults: q0=2, q1=4, alpha=1, theta_plus=pi/3
    REQUIRE(make_family(SolutionId::SinhDark1, p).name == "sinh-dark1");
    p.delta = -1;
    REQUIRE_THROWS_AS(make_family(SolutionId::SinhDark1, p), ParameterDomain);
    p.delta = 1;

    // NLS ids reject a time-carrier override but accept a boost
    FamilyParams pb;
    pb.beta = 0.25;
    auto boosted = make_family(SolutionId::NlsCase3Dark, pb);
    REQUIRE(boosted.spec.beta == Catch::Approx(0.25));
    REQUIRE(boosted.spec.kind == EquationKind::RstNls);

    // singular families advertise their pole lines
    auto sing = make_family(SolutionId::SinhBright1Singular, p);
    REQUIRE(sing.is_singular_family());
    auto reg = make_family(SolutionId::SinhDark1, p);
    REQUIRE_FALSE(reg.is_singular_family());
}
