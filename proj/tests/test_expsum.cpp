#include <catch2/catch_amalgamated.hpp>

#include "ist/expsum.hpp"

using namespace ist;
using C = cplx;

namespace {

// central difference helper for cross-checking the exact derivatives
template <class F>
C fd(F f, double u, double h = 1e-5) {
    return (f(u + h) - f(u - h)) / (2 * h);
}

ExpSum sample_sum() {
    ExpSum s;
    s.terms.push_back({C(1.0, 0.5), C(0.3, -0.2), C(-0.1, 0.7)});
    s.terms.push_back({C(-2.0, 0.0), C(-0.4, 0.9), C(0.2, -0.3)});
    s.terms.push_back({C(0.0, 1.5), C(0.1, 0.1), C(0.0, -1.1)});
    return s;
}

}  // namespace

TEST_CASE("exact term derivatives match finite differences", "[expsum]") {
    const auto s = sample_sum();
    const double x = 0.63, t = -0.41;
    const C sx = s.dx()(x, t);
    const C st = s.dt()(x, t);
    REQUIRE(std::abs(sx - fd([&](double u) { return s(u, t); }, x)) < 1e-9);
    REQUIRE(std::abs(st - fd([&](double u) { return s(x, u); }, t)) < 1e-9);
}

TEST_CASE("sum and product operators", "[expsum]") {
    const auto a = sample_sum();
    ExpSum b{{C(2.0), C(0.5), C(-0.25)}};
    const double x = 0.2, t = 0.9;
    REQUIRE(std::abs((a + b)(x, t) - (a(x, t) + b(x, t))) < 1e-13);
    REQUIRE(std::abs((a * b)(x, t) - a(x, t) * b(x, t)) < 1e-13);
    REQUIRE(std::abs((C(0, 2) * a)(x, t) - C(0, 2) * a(x, t)) < 1e-13);
    // product rule survives the term-merge
    const C px = (a * b).dx()(x, t);
    REQUIRE(std::abs(px - (a.dx()(x, t) * b(x, t) + a(x, t) * b.dx()(x, t))) < 1e-12);
}

TEST_CASE("shifted evaluation avoids overflow at large arguments", "[expsum]") {
    // e^{16 x} style exponents: raw evaluation at x = 60 would overflow
    ExpSum num{{1.0, 16.0, 0.0}, {0.5, 8.0, 0.0}};
    ExpSum den{{1.0, 16.0, 0.0}, {2.0, 0.0, 0.0}};
    RatExp r;
    r.num = num;
    r.den = den;
    const double x = 60.0;
    const C v = r.q(x, 0.0);
    REQUIRE(std::isfinite(v.real()));
    // dominant terms: num/den -> 1 as x -> +inf
    REQUIRE(std::abs(v - 1.0) < 1e-10);
    const double shift = num.max_re_exponent(x, 0.0);
    REQUIRE(shift == Catch::Approx(960.0));
    REQUIRE(std::abs(num.eval_shifted(x, 0.0, shift) - 1.0) < 1e-10);
    REQUIRE(num.abs_sum_shifted(x, 0.0, shift) == Catch::Approx(1.0));
}

TEST_CASE("rational evaluation and exact derivatives", "[expsum]") {
    RatExp r;
    r.pre = {C(0.0, 2.0), C(0.0, -0.5), C(0.0, 1.0)};  // 2i e^{-ix/2 + it}
    r.num = {{1.0, C(0.7, 0.1), C(-0.3, 0.2)}, {C(0.0, -1.0), C(-0.7, 0.0), C(0.3, 0.0)}};
    r.den = {{2.0, C(0.1, 0.0), C(0.0, 0.4)}, {1.0, C(-0.1, 0.3), C(0.1, 0.0)}};

    const double x = 0.37, t = -0.82;
    const auto v = r.eval(x, t);
    REQUIRE(std::abs(v.q - r.q(x, t)) < 1e-14);
    REQUIRE(std::abs(v.qx - fd([&](double u) { return r.q(u, t); }, x)) < 1e-9);
    REQUIRE(std::abs(v.qt - fd([&](double u) { return r.q(x, u); }, t)) < 1e-9);
    REQUIRE(v.den_scale > 0.0);
}

TEST_CASE("denominator cancellation measure", "[expsum]") {
    // den = e^{x} - 1 vanishes exactly at x = 0
    RatExp r;
    r.num = {{1.0, 0.0, 0.0}};
    r.den = {{1.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}};
    REQUIRE(r.den_cancellation(0.0, 0.0) < 1e-15);
    REQUIRE(r.den_cancellation(3.0, 0.0) > 0.4);
    // far from the zero the measure saturates towards 1
    REQUIRE(r.den_cancellation(40.0, 0.0) == Catch::Approx(1.0).margin(1e-12));
}
