#include <catch2/catch_amalgamated.hpp>

#include "ist/direct.hpp"

using namespace ist;
using C = cplx;

namespace {
const double th = pi / 3;
const C z1 = 2.0 * std::exp(iu * th);  // discrete eigenvalue of the dark family
const C w1 = 4.0 / z1;                 // involution image
}  // namespace

TEST_CASE("scattering a against the closed blaschke factor", "[direct]") {
    auto pot = make_potential(make_sinh_dark1(2, 1, th), 0.0);
    REQUIRE(pot.L > 10.0);
    REQUIRE(std::abs(scattering_a(pot, z1)) < 1e-9);
    for (C z : {C(1.7, 0.9), C(-0.8, 2.1), C(0.3, 0.4)}) {
        const C a_ref = (z - z1) / (z - w1);
        REQUIRE(std::abs(scattering_a(pot, z) - a_ref) < 1e-9);
    }
}

TEST_CASE("contour coefficients: unitarity, symmetry, reflectionless", "[direct]") {
    auto pot = make_potential(make_sinh_dark1(2, 1, th), 0.0);
    for (double zr : {0.35, 1.2, 2.6, -0.7, -3.0}) {
        const auto c = scattering_coeffs(pot, C(zr, 0.0));
        INFO("z = " << zr);
        REQUIRE(std::abs(c.unitarity_defect()) < 1e-9);
        REQUIRE(std::abs(c.bbar + c.b) < 1e-9);  // sinh-side symmetry
        REQUIRE(std::abs(c.a - (C(zr) - z1) / (C(zr) - w1)) < 1e-8);
        REQUIRE(std::abs(c.b) < 1e-8);  // reflectionless family
    }
}

TEST_CASE("norming constants from the potential", "[direct]") {
    auto f = make_sinh_dark1(2, 1, th);
    auto pot = make_potential(f, 0.0);
    REQUIRE(std::abs(norming_b(pot, z1) - iu) < 1e-9);
    REQUIRE(std::abs(norming_bbar(pot, w1) + iu) < 1e-9);
    // evolved potential: frozen reference value at t = 0.6
    auto pot6 = make_potential(f, 0.6);
    REQUIRE(std::abs(norming_b(pot6, z1) - C(0.1997291614, 0.2919433057)) < 1e-9);
}

TEST_CASE("wronskian of the jost pair is x-independent", "[direct]") {
    auto pot = make_potential(make_sinh_dark1(2, 1, th), 0.0);
    std::vector<double> xs;
    for (double x = -6; x <= 6.0001; x += 0.5) xs.push_back(x);
    const C z(1.3, 0.8);
    const auto M = jost_on_grid(pot, z, JostKind::M, xs);
    const auto N = jost_on_grid(pot, z, JostKind::N, xs);
    double lo = 1e300, hi = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double wv = std::abs(M[i][0] * N[i][1] - M[i][1] * N[i][0]);
        lo = std::min(lo, wv);
        hi = std::max(hi, wv);
    }
    REQUIRE((hi - lo) / hi < 1e-10);
}

TEST_CASE("neumann series agrees with ode integration", "[direct]") {
    auto pot = make_potential(make_sinh_dark1(2, 1, th), 0.0);
    const C z(0.9, 1.1);
    const auto nr = neumann_m(pot, z);
    const auto ode = jost_on_grid(pot, z, JostKind::M, nr.xs);
    double worst = 0;
    for (std::size_t i = 0; i < nr.xs.size(); ++i)
        worst = std::max({worst, std::abs(nr.M[i][0] - ode[i][0]),
                          std::abs(nr.M[i][1] - ode[i][1])});
    INFO("iterations " << nr.iterations << ", last delta " << nr.last_delta);
    REQUIRE(worst < 1e-4);
    REQUIRE(nr.iterations > 1);
}

TEST_CASE("eigenvalue search on the real-cut dark family", "[direct][search]") {
    auto pot = make_potential(make_sinh_dark1(2, 1, th), 0.0);
    const auto evs = find_eigenvalues(pot);
    REQUIRE(evs.size() == 1);
    REQUIRE(std::abs(evs[0] - z1) < 1e-6);
}

TEST_CASE("eigenvalue search on the circle-cut two-soliton family", "[direct][search]") {
    auto pot = make_potential(make_nls_case2(2, 4, 1, -1), 0.13);
    auto evs = find_eigenvalues(pot);
    REQUIRE(evs.size() == 2);
    std::sort(evs.begin(), evs.end(),
              [](C a, C b) { return std::abs(a) > std::abs(b); });
    REQUIRE(std::abs(evs[0] - C(0, 4)) < 1e-5);
    REQUIRE(std::abs(evs[1] - C(0, -1)) < 1e-5);
}
