#include "nbsums/constants.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nbsums;
using namespace nbsums::consts;

// frozen 25-digit references from an independent root finder
namespace {
constexpr double kC = 1.602087803660446264857639;
constexpr double kV0 = 0.1715121345821375389533276;
constexpr double kZ0 = 0.07129519025074840236249978;
constexpr double kC4 = 12.81670242928357011886111;
constexpr double kC5 = 3.550749197600865184423894;
constexpr double kESlope = 0.09528077632865284333139656;
constexpr double kHSlope = 18.99059303527693682662728;
}  // namespace

TEST_CASE("theorem constants: equation root scenario") {
    const TheoremConstants tc = solve_theorem_constants(1e-12);
    const auto& s = tc.equation_root;
    REQUIRE(s.C == Catch::Approx(kC).margin(1e-13));
    REQUIRE(s.v0 == Catch::Approx(kV0).margin(1e-13));
    REQUIRE(s.z0 == Catch::Approx(kZ0).margin(1e-13));
    REQUIRE(s.res_C <= 1e-12);
    REQUIRE(s.res_v0 <= 1e-12);
    REQUIRE(s.z0 > 0.0);
    // the equation root sits below (sqrt5+1)/2, so the side condition fails
    REQUIRE_FALSE(tc.root_satisfies_phi_bound);
    REQUIRE(tc.c_sign_changes == 1);
}

TEST_CASE("theorem constants: phi-clamped scenario") {
    const TheoremConstants tc = solve_theorem_constants(1e-12);
    const auto& s = tc.phi_clamped;
    REQUIRE(s.C == Catch::Approx(kPhi).margin(1e-15));
    REQUIRE(s.v0 == Catch::Approx(0.1701979004596141).margin(1e-13));
    REQUIRE(s.z0 == Catch::Approx(0.0704122036084000).margin(1e-13));
    REQUIRE(s.res_v0 <= 1e-12);
    REQUIRE(s.z0 > 0.0);
}

TEST_CASE("section constants") {
    const SectionConstants sc = solve_section_constants(1e-12);
    REQUIRE(sc.C4 == Catch::Approx(kC4).margin(1e-12));
    REQUIRE(sc.C4 >= kPhi);
    REQUIRE(sc.res_C4 <= 1e-12);
    REQUIRE(sc.C5 == Catch::Approx(kC5).margin(1e-12));
    REQUIRE(sc.E_slope == Catch::Approx(kESlope).margin(1e-13));
    REQUIRE(sc.H_slope == Catch::Approx(kHSlope).margin(1e-11));
    REQUIRE(sc.E(0.0) == 0.0);
    REQUIRE(sc.H(0.0) == 0.5);
    REQUIRE(sc.c4_sign_changes == 1);  // unique root on [4, 50]
}

TEST_CASE("consistency probe is reported, not asserted") {
    const TheoremConstants tc = solve_theorem_constants(1e-12);
    const SectionConstants sc = solve_section_constants(1e-12);
    const double probe = consistency_probe(tc, sc, 0.0);
    REQUIRE(std::isfinite(probe));
    // the C-vs-C4 mismatch leaves a large residual; record its magnitude
    REQUIRE(std::abs(probe) > 1.0);
}

TEST_CASE("bisect rejects bracket without sign change") {
    REQUIRE_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                      accuracy_error);
}
