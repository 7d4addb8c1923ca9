#include <catch2/catch_amalgamated.hpp>

#include "ist/spectral.hpp"

using namespace ist;
using C = cplx;

TEST_CASE("uniformization flattens both sheet topologies", "[spectral]") {
    const double q0 = 2.0;
    for (C z : {C(1.3, 0.8), C(-2.1, 0.4), C(0.2, -1.7), C(3.0, 2.5)}) {
        SpectralPoint pr{z, q0, CutTopology::RealCut};
        auto [k, lam] = k_lambda(pr);
        REQUIRE(std::abs(k + lam - z) < 1e-14);
        REQUIRE(std::abs(lam * lam - (k * k - q0 * q0)) < 1e-12);

        SpectralPoint pi_{z, q0, CutTopology::ImaginaryCut};
        auto [ki, li] = k_lambda(pi_);
        REQUIRE(std::abs(ki + li - z) < 1e-14);
        REQUIRE(std::abs(li * li - (ki * ki + q0 * q0)) < 1e-12);
    }
}

TEST_CASE("involution fixes k and flips lambda", "[spectral]") {
    const double q0 = 2.0;
    for (auto cut : {CutTopology::RealCut, CutTopology::ImaginaryCut}) {
        const SpectralPoint p{C(1.1, 1.9), q0, cut};
        const SpectralPoint q = involution(p);
        REQUIRE(std::abs(k_of(q) - k_of(p)) < 1e-14);
        REQUIRE(std::abs(lambda_of(q) + lambda_of(p)) < 1e-14);
        // applying it twice returns to the start
        REQUIRE(std::abs(involution(q).z - p.z) < 1e-14);
    }
    // explicit images: z -> q0^2/z on the real cut, -q0^2/z on the imaginary
    REQUIRE(std::abs(involution(SpectralPoint{C(1, 2), q0, CutTopology::RealCut}).z -
                     4.0 / C(1, 2)) < 1e-14);
    REQUIRE(std::abs(involution(SpectralPoint{C(1, 2), q0, CutTopology::ImaginaryCut}).z +
                     4.0 / C(1, 2)) < 1e-14);
}

TEST_CASE("two_lambda_k matches the product of the parts", "[spectral]") {
    for (auto cut : {CutTopology::RealCut, CutTopology::ImaginaryCut}) {
        const SpectralPoint p{C(0.7, 1.3), 2.0, cut};
        REQUIRE(std::abs(two_lambda_k(p) - 2.0 * lambda_of(p) * k_of(p)) < 1e-12);
    }
}

TEST_CASE("region classification", "[spectral]") {
    const double q0 = 2.0;
    // real cut: upper half plane is analytic for a; contour is the real axis
    REQUIRE(classify(SpectralPoint{C(1.0, 0.5), q0, CutTopology::RealCut}) ==
            RegionTag::UpperAnalytic);
    REQUIRE(classify(SpectralPoint{C(1.0, -0.5), q0, CutTopology::RealCut}) ==
            RegionTag::LowerAnalytic);
    REQUIRE(classify(SpectralPoint{C(3.7, 0.0), q0, CutTopology::RealCut}) ==
            RegionTag::Contour);
    // imaginary cut: the upper region is outside the circle in the upper half
    // plane plus inside it in the lower half; the circle |z| = q0 is contour
    REQUIRE(classify(SpectralPoint{C(0.0, 4.0), q0, CutTopology::ImaginaryCut}) ==
            RegionTag::UpperAnalytic);
    REQUIRE(classify(SpectralPoint{C(0.0, -1.0), q0, CutTopology::ImaginaryCut}) ==
            RegionTag::UpperAnalytic);
    REQUIRE(classify(SpectralPoint{C(0.0, 1.0), q0, CutTopology::ImaginaryCut}) ==
            RegionTag::LowerAnalytic);
    REQUIRE(on_contour(SpectralPoint{std::polar(2.0, 0.9), q0, CutTopology::ImaginaryCut}));
    REQUIRE(on_contour(SpectralPoint{C(1.2, 0.0), q0, CutTopology::ImaginaryCut}));
}

TEST_CASE("angle wrapping", "[spectral]") {
    REQUIRE(wrap_angle(2 * pi + 0.3) == Catch::Approx(0.3));
    REQUIRE(wrap_angle(-0.3) == Catch::Approx(2 * pi - 0.3));
    REQUIRE(wrap_angle(2 * pi) == 0.0);
}

TEST_CASE("phase sum classification accepts only 0 and pi", "[spectral]") {
    REQUIRE(phase_sum_class(pi / 3, -pi / 3) == PhaseSum::Zero);
    REQUIRE(phase_sum_class(pi / 3, 2 * pi - pi / 3) == PhaseSum::Zero);
    REQUIRE(phase_sum_class(pi / 3, pi - pi / 3) == PhaseSum::Pi);
    REQUIRE_THROWS_AS(phase_sum_class(pi / 3, pi / 6), PhaseSumError);
}

TEST_CASE("sign case selects the cut topology", "[spectral]") {
    REQUIRE(topology_for(+1, PhaseSum::Zero) == CutTopology::RealCut);
    REQUIRE(topology_for(+1, PhaseSum::Pi) == CutTopology::ImaginaryCut);
    REQUIRE(topology_for(-1, PhaseSum::Pi) == CutTopology::RealCut);
    REQUIRE(topology_for(-1, PhaseSum::Zero) == CutTopology::ImaginaryCut);
    REQUIRE_THROWS_AS(topology_for(2, PhaseSum::Zero), ParameterDomain);
}

TEST_CASE("case names round trip", "[spectral]") {
    for (const char* n : {"sinh0", "sinhPi", "sine0", "sinePi"}) {
        REQUIRE(case_from_name(n).name() == n);
    }
    REQUIRE_THROWS_AS(case_from_name("nope"), ParameterDomain);
}

TEST_CASE("reflectionless constraint signs", "[spectral]") {
    // sinh sum=0: always +1
    REQUIRE(constraint_sign({+1, PhaseSum::Zero}, 1) == 1.0);
    REQUIRE(constraint_sign({+1, PhaseSum::Zero}, 2) == 1.0);
    // sinh sum=pi: -1 for even J
    REQUIRE(constraint_sign({+1, PhaseSum::Pi}, 2) == -1.0);
    REQUIRE(constraint_sign({+1, PhaseSum::Pi}, 3) == 1.0);
    // sine sum=pi: always -1
    REQUIRE(constraint_sign({-1, PhaseSum::Pi}, 1) == -1.0);
    REQUIRE(constraint_sign({-1, PhaseSum::Pi}, 2) == -1.0);
    // sine sum=0: +1 for even J
    REQUIRE(constraint_sign({-1, PhaseSum::Zero}, 2) == 1.0);
    REQUIRE(constraint_sign({-1, PhaseSum::Zero}, 3) == -1.0);
}
