#include "nbsums/zeta.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nbsums;
using namespace nbsums::zt;

// references computed with 25-digit arithmetic (independent implementation)
namespace {
struct Ref {
    double t, re, im, tol;
};
const Ref kRefs[] = {
    {0.0, -1.460354508809586812889499, 0.0, 1e-10},
    {17.5, 2.265200469919341046118809, 0.4090974363537555273126792, 1e-10},
    {100.0, 2.692619885681324090476096, -0.02038602960259816177072685, 1e-10},
    {500.5, 0.688067903194115430244288, 0.1423571351998760204841596, 1e-9},
    {1000.25, 1.716294878292626367941927, 1.104602915384749757849376, 1e-9},
    {2000.0, 0.7906102333265346682297572, 0.01720510868412607005364904, 1e-9},
};
}  // namespace

TEST_CASE("zeta(1/2+it) against frozen references") {
    for (const Ref& r : kRefs) {
        const CriticalLineValue v = zeta_half(r.t);
        REQUIRE(v.z.real() == Catch::Approx(r.re).margin(r.tol));
        REQUIRE(v.z.imag() == Catch::Approx(r.im).margin(r.tol));
        REQUIRE(v.err_est <= 1e-9);
    }
}

TEST_CASE("conjugate symmetry") {
    for (double t : {17.5, 321.75}) {
        const auto a = zeta_half(t).z;
        const auto b = zeta_half(-t).z;
        REQUIRE(std::abs(a - std::conj(b)) < 1e-10);
    }
}

TEST_CASE("first zero bracketed in [14.1, 14.2] by the rotated value") {
    const double za = hardy_Z(14.1);
    const double zb = hardy_Z(14.2);
    REQUIRE(za * zb < 0.0);
}

TEST_CASE("range guard") {
    REQUIRE_THROWS_AS(zeta_half(2e4), accuracy_error);
}
