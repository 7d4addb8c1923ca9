#include <catch2/catch_amalgamated.hpp>

#include "ist/direct.hpp"
#include "ist/sdata.hpp"

using namespace ist;
using std::abs;
using C = cplx;

TEST_CASE("discrete data tables for the canonical families", "[sdata]") {
    FamilyParams p;  // q0=2, q1=4, alpha=1, theta_plus=pi/3, d1=1, d2=-1

    SECTION("sinh dark1") {
        auto d = discrete_data_for(make_family(SolutionId::SinhDark1, p));
        REQUIRE(abs(d.z[0] - 2.0 * std::exp(iu * pi / 3.0)) < 1e-15);
        REQUIRE(abs(d.b[0] - iu) == 0.0);
        REQUIRE(abs(d.bbar[0] + iu) == 0.0);
        REQUIRE(abs(d.zbar[0] - 4.0 / (2.0 * std::exp(iu * pi / 3.0))) < 1e-15);
        REQUIRE_NOTHROW(validate_constraint(d));
        // a'(z1) = 1/(2 i q0 sin theta_+)
        REQUIRE(abs(a_prime(d, 0) - 1.0 / (2.0 * iu * 2.0 * std::sin(pi / 3.0))) < 1e-15);
    }
    SECTION("sinh bright1 flips the norming sign") {
        FamilyParams pb = p;
        pb.d1 = -1;
        auto d = discrete_data_for(make_family(SolutionId::SinhBright1Singular, pb));
        REQUIRE(abs(d.b[0] + iu) == 0.0);
    }
    SECTION("sine dark1") {
        auto d = discrete_data_for(make_family(SolutionId::SineDark1, p));
        REQUIRE(abs(d.z[0] - 2.0 * std::exp(iu * (pi / 3.0 + pi / 2.0))) < 1e-15);
        REQUIRE(abs(d.b[0] + 1.0) == 0.0);
        REQUIRE(abs(d.bbar[0] + 1.0) == 0.0);
        REQUIRE_NOTHROW(validate_constraint(d));
        REQUIRE(abs(a_prime(d, 0) - 1.0 / (2.0 * iu * 2.0 * std::cos(pi / 3.0))) < 1e-15);
    }
    SECTION("sinh two-soliton") {
        auto d = discrete_data_for(make_family(SolutionId::SinhTwoSoliton, p));
        REQUIRE(abs(d.z[0] - 4.0 * iu) == 0.0);
        REQUIRE(abs(d.z[1] + iu) == 0.0);
        // circle-cut involution: zbar = -q0^2/z
        REQUIRE(abs(d.zbar[0] - iu) < 1e-15);
        REQUIRE(abs(d.zbar[1] + 4.0 * iu) < 1e-15);
        REQUIRE_NOTHROW(validate_constraint(d));
        // closed derivatives at q0=2, q1=4
        REQUIRE(abs(a_prime(d, 0) + 5.0 * iu / 24.0) < 1e-15);
        REQUIRE(abs(a_prime(d, 1) + 5.0 * iu / 6.0) < 1e-15);
        REQUIRE(abs(abar_prime(d, 0) - 5.0 * iu / 6.0) < 1e-14);
        REQUIRE(abs(abar_prime(d, 1) - 5.0 * iu / 24.0) < 1e-15);
    }
    SECTION("nls two-soliton sign tables") {
        auto d2 = discrete_data_for(make_family(SolutionId::NlsCase2Two, p));
        REQUIRE(abs(d2.z[0] - 4.0 * iu) == 0.0);
        REQUIRE(abs(d2.b[0] - iu) == 0.0);
        REQUIRE(abs(d2.b[1] + iu) == 0.0);
        REQUIRE_NOTHROW(validate_constraint(d2));
        auto d4 = discrete_data_for(make_family(SolutionId::NlsCase4Two, p));
        REQUIRE(abs(d4.b[0] - 1.0) == 0.0);
        REQUIRE(abs(d4.bbar[1] + 1.0) == 0.0);
        REQUIRE_NOTHROW(validate_constraint(d4));
    }
}

TEST_CASE("constraint rejects improper eigenvalue sets", "[sdata]") {
    FamilyParams p;
    SECTION("single eigenvalue on the circle-cut topology") {
        EquationSpec s = make_family(SolutionId::SinhTwoSoliton, p).spec;
        auto d = make_reflectionless(s, {4.0 * iu}, {iu}, {-iu});
        REQUIRE_THROWS_AS(validate_constraint(d), ImproperEigenvalue);
    }
    SECTION("eigenvalue in the lower region") {
        EquationSpec s = make_family(SolutionId::SinhDark1, p).spec;
        auto d = make_reflectionless(s, {2.0 * std::exp(-iu * pi / 3.0)}, {iu}, {-iu});
        REQUIRE_THROWS_AS(validate_constraint(d), ImproperEigenvalue);
    }
    SECTION("wrong phase violates the product constraint") {
        EquationSpec s = make_family(SolutionId::SinhDark1, p).spec;
        auto d = make_reflectionless(s, {2.0 * std::exp(iu * 1.2)}, {iu}, {-iu});
        REQUIRE_THROWS_AS(validate_constraint(d), ConstraintViolated);
    }
}

TEST_CASE("time evolution of norming constants", "[sdata]") {
    FamilyParams p;
    SECTION("sinh dark1: frozen value and displayed exponent") {
        auto d0 = discrete_data_for(make_family(SolutionId::SinhDark1, p));
        auto d = evolve(d0, 0.6);
        REQUIRE(abs(d.b[0] - C(0.1997291614, 0.2919433057)) < 1e-9);
        const C disp = iu * std::exp(-(iu * 1.0 * 0.6 / std::cos(pi / 3.0)) *
                                     std::exp(-iu * pi / 3.0));
        REQUIRE(abs(d.b[0] - disp) < 1e-14);
        auto back = evolve(d, 0.0);
        REQUIRE(abs(back.b[0] - d0.b[0]) < 1e-14);
        REQUIRE(abs(back.bbar[0] - d0.bbar[0]) < 1e-14);
    }
    SECTION("sine dark1 displayed exponent") {
        auto d = evolve(discrete_data_for(make_family(SolutionId::SineDark1, p)), 0.37);
        const C disp = -std::exp(2.0 * 1.0 * iu * 0.37 / (std::exp(2.0 * iu * pi / 3.0) - 1.0));
        REQUIRE(abs(d.b[0] - disp) < 1e-14);
    }
    SECTION("gordon two-soliton displayed exponents") {
        auto d = evolve(discrete_data_for(make_family(SolutionId::SinhTwoSoliton, p)), 0.52);
        const double q0 = 2, q1 = 4, al = 1, t = 0.52;
        const C b1 = iu * std::exp(-2.0 * al * q0 * q0 * iu * t / (q0 * q0 + q1 * q1));
        const C b2 = -iu * std::exp(-2.0 * al * q1 * q1 * iu * t / (q0 * q0 + q1 * q1));
        REQUIRE(abs(d.b[0] - b1) < 1e-14);
        REQUIRE(abs(d.b[1] - b2) < 1e-14);
    }
    SECTION("nls factor e^{-2i(c + 2 lambda k) t}") {
        auto f = make_family(SolutionId::NlsCase1Dark, FamilyParams{});
        auto d0 = discrete_data_for(f);
        auto d = evolve(d0, 0.41);
        const SpectralPoint sp{d0.z[0], f.spec.q0, f.spec.topology()};
        const C c = static_cast<double>(f.spec.sigma) * f.spec.q0 * f.spec.q0;
        const C fac = std::exp(-2.0 * iu * (c + two_lambda_k(sp)) * 0.41);
        REQUIRE(abs(d.b[0] - d0.b[0] * fac) < 1e-15);
    }
    SECTION("spatial-carrier exponent with beta != 0") {
        FamilyParams pb;
        pb.beta = 0.3;
        auto d = evolve(discrete_data_for(make_family(SolutionId::SpatialBcSinh, pb)), 0.29);
        const double q0 = 2, al = 1, th = pi / 3, be = 0.3, t = 0.29;
        const C disp = iu * std::exp(-iu * al *
                                     ((2.0 * q0 * std::exp(-iu * th) - be) /
                                      (2.0 * q0 * std::cos(th) - be)) *
                                     t);
        REQUIRE(abs(d.b[0] - disp) < 1e-14);
    }
}

TEST_CASE("trace formula reproduces the direct transmission", "[sdata][trace]") {
    FamilyParams p;
    auto f = make_family(SolutionId::SinhDark1, p);
    auto d = discrete_data_for(f);
    auto pot = make_potential(f, 0.0);
    const C zv(1.3, 2.1);
    const C tr = trace_a(d, zv);
    const C av = scattering_a(pot, zv);
    REQUIRE(abs(tr - av) / abs(av) < 1e-9);
    // an explicit zero-reflection callback must not change anything
    REQUIRE(abs(trace_a(d, zv, [](C) { return C(0.0); }) - tr) < 1e-12);
    REQUIRE_THROWS_AS(trace_a(d, C(1.5, 1e-8)), ContourPole);
}

TEST_CASE("trace formula on the circle-cut topology", "[sdata][trace]") {
    FamilyParams p;
    auto d = discrete_data_for(make_family(SolutionId::SinhTwoSoliton, p));
    const C zv(1.9, 1.4);  // upper region: |z| > q0, Im z > 0
    const C tr = trace_a(d, zv, [](C) { return C(0.0); });
    const C want = a_blaschke(d, zv);
    REQUIRE(abs(tr - want) / abs(want) < 1e-10);
    // 0.012 away from the circle |z| = 2: inside the allowed band
    REQUIRE_NOTHROW(trace_a(d, C(1.99, 0.3)));
    REQUIRE_THROWS_AS(trace_a(d, C(0.0, 2.0 + 5e-7)), ContourPole);
}

TEST_CASE("scattering data json round trip", "[sdata][json]") {
    FamilyParams p;
    auto d = evolve(discrete_data_for(make_family(SolutionId::SinhTwoSoliton, p)), 0.52);
    auto d2 = data_from_json(data_to_json(d));
    for (int i = 0; i < d.J(); ++i) {
        REQUIRE(abs(d.z[i] - d2.z[i]) == 0.0);
        REQUIRE(abs(d.zbar[i] - d2.zbar[i]) == 0.0);
        REQUIRE(abs(d.b[i] - d2.b[i]) == 0.0);
        REQUIRE(abs(d.bbar[i] - d2.bbar[i]) == 0.0);
    }
    REQUIRE(d2.t == d.t);
    REQUIRE(d2.spec.kind == d.spec.kind);
    REQUIRE(d2.spec.sigma == d.spec.sigma);
    REQUIRE(d2.spec.q0 == d.spec.q0);
    REQUIRE(d2.spec.theta_plus == d.spec.theta_plus);
}

TEST_CASE("evolution exponent pole at z^2 + q0^2 = 0", "[sdata]") {
    EquationSpec s = make_family(SolutionId::SinhDark1, FamilyParams{}).spec;
    // z = 2i on the real-cut topology: k = (z + q0^2/z)/2 = 0 = beta/2
    REQUIRE_THROWS_AS(evolution_factor(s, C(0.0, 2.0), 1.0), KPole);
}
