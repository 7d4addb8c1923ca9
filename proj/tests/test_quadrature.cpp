#include <catch2/catch_amalgamated.hpp>

#include "ist/ode.hpp"
#include "ist/quadrature.hpp"

using namespace ist;
using C = cplx;

TEST_CASE("gk15 is exact on low-degree polynomials", "[quadrature]") {
    auto r = gk15([](double x) { return C(x * x * x - 2 * x + 1); }, -1.0, 3.0);
    // x^4/4 - x^2 + x over [-1, 3] = (81/4 - 9 + 3) - (1/4 - 1 - 1)
    REQUIRE(std::abs(r.value - ((81.0 / 4 - 6) - (0.25 - 2))) < 1e-13);
    REQUIRE(r.evals == 15);
}

TEST_CASE("adaptive quadrature on oscillatory and peaked integrands", "[quadrature]") {
    // int_0^pi sin = 2, complex carrier included
    auto osc = quad_adaptive([](double x) { return C(std::sin(x), std::cos(3 * x)); },
                             0.0, pi);
    REQUIRE(std::abs(osc.value.real() - 2.0) < 1e-12);
    REQUIRE(std::abs(osc.value.imag() - 0.0) < 1e-12);  // sin(3 pi)/3 = 0

    // narrow Lorentzian: int 1/(1e-4 + x^2) over [-1, 1] = 2 atan(100)/0.01
    const double w = 1e-2;
    auto peak = quad_adaptive([&](double x) { return C(1.0 / (w * w + x * x)); },
                              -1.0, 1.0, 1e-12, 1e-12);
    const double exact = 2.0 * std::atan(1.0 / w) / w;
    REQUIRE(std::abs(peak.value.real() - exact) < 1e-9 * exact);
    REQUIRE(peak.error < 1e-7);
    REQUIRE(peak.evals > 15);  // forced to subdivide
}

TEST_CASE("tail bound fits an exponential rate", "[quadrature]") {
    auto te = tail_exp_bound([](double x) { return C(3.0 * std::exp(-2.0 * x)); }, 5.0);
    REQUIRE(te.rate == Catch::Approx(2.0));
    // true tail integral is (3/2) e^{-10}; the bound equals it here
    REQUIRE(te.bound == Catch::Approx(1.5 * std::exp(-10.0)));
    // non-decaying probe degrades gracefully to the edge magnitude
    auto flat = tail_exp_bound([](double) { return C(0.25); }, 5.0);
    REQUIRE(flat.rate == 0.0);
    REQUIRE(flat.bound == Catch::Approx(0.25));
}

TEST_CASE("ode integration against a closed solution", "[ode]") {
    // y'' = -y as a first order system; y(0) = 1, y'(0) = 0 -> cos x
    auto f = [](double, const State2& y, State2& d) {
        d[0] = y[1];
        d[1] = -y[0];
    };
    const State2 y1 = integrate_to(f, State2{1.0, 0.0}, 0.0, 7.0);
    REQUIRE(std::abs(y1[0] - std::cos(7.0)) < 1e-10);
    REQUIRE(std::abs(y1[1] + std::sin(7.0)) < 1e-10);

    // backwards run returns to the start
    const State2 y0 = integrate_to(f, y1, 7.0, 0.0);
    REQUIRE(std::abs(y0[0] - 1.0) < 1e-10);
    REQUIRE(std::abs(y0[1]) < 1e-10);
}

TEST_CASE("ode dense output at sample points", "[ode]") {
    auto f = [](double x, const State2& y, State2& d) {
        d[0] = C(0.0, 1.0) * y[0];  // y = e^{ix}
        d[1] = C(x) * y[1];         // y = e^{x^2/2}
    };
    const std::vector<double> xs{0.5, 1.0, 2.0};
    const auto states = integrate_at(f, State2{1.0, 1.0}, 0.0, xs);
    REQUIRE(states.size() == 3);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        REQUIRE(std::abs(states[i][0] - std::exp(C(0.0, xs[i]))) < 1e-10);
        REQUIRE(std::abs(states[i][1] - std::exp(C(xs[i] * xs[i] / 2))) < 1e-9);
    }
}
