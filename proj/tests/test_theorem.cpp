#include "nbsums/theorem.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nbsums;
using namespace nbsums::thm;

namespace {
const arith::MoebiusTable& mt() {
    static arith::MoebiusTable t = arith::MoebiusTable::build(6000);
    return t;
}
const gfn::GEvaluator& ge() {
    static gfn::GEvaluator e;
    return e;
}
}  // namespace

TEST_CASE("k = 2, D = 2: every summand vanishes") {
    const TheoremSumReport r = theorem_sum(2, 2.0, 0.05, 0.1715, 0.0713, mt(), ge());
    REQUIRE(r.S == 0.0);  // g(1/2) = 0 and g at integers = 0
    REQUIRE(r.sigma1 + r.sigma2 + r.sigma3 == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("Vaughan split identity and the S11/S12 refinement") {
    for (int64_t k : {10, 30, 50}) {
        const TheoremSumReport r =
            theorem_sum(k, 2.0, 0.05, 0.1715, 0.0713, mt(), ge());
        const double scale = std::pow(static_cast<double>(k), 2.0);
        REQUIRE(std::abs(r.S - (r.sigma1 + r.sigma2 + r.sigma3)) <=
                1e-9 * scale);
        REQUIRE(std::abs(r.sigma1 - (r.sigma11 + r.sigma12)) <= 1e-9 * scale);
        // w = k^{0.1} < k^2, so c2 has no support in [k^2, 2k^2)
        REQUIRE(r.sigma2 == 0.0);
        REQUIRE(std::isfinite(r.normalized));
        REQUIRE(r.w == Catch::Approx(std::pow(double(k), 0.1)));
    }
}

TEST_CASE("larger delta0 gives sigma2 support only below w") {
    // w = 30^{1.2} ~ 59 < 900: still no c2 support inside the window
    const TheoremSumReport r = theorem_sum(30, 2.0, 0.6, 0.1715, 0.0713, mt(), ge());
    REQUIRE(r.sigma2 == 0.0);
    const double scale = 900.0;
    REQUIRE(std::abs(r.S - (r.sigma1 + r.sigma2 + r.sigma3)) <= 1e-9 * scale);
}

TEST_CASE("domain guards") {
    REQUIRE_THROWS_AS(theorem_sum(1, 2.0, 0.05, 0.17, 0.07, mt(), ge()),
                      domain_error);
    REQUIRE_THROWS_AS(theorem_sum(100, 2.0, 0.05, 0.17, 0.07, mt(), ge()),
                      domain_error);  // 2*100^2 > sieve limit
    REQUIRE_THROWS_AS(theorem_sum(100000000, 2.0, 0.05, 0.17, 0.07, mt(), ge()),
                      resource_error);  // k^D = 1e16 overflows the index budget
}

TEST_CASE("per-denominator g cache: computed once, reused") {
    const auto& t1 = ge().g_table(101);
    REQUIRE(t1.size() == 101);
    REQUIRE(t1[0] == 0.0);
    for (int64_t j : {1, 17, 50, 100})
        REQUIRE(t1[j] == ge().g(j, 101));
    const auto& t2 = ge().g_table(101);
    REQUIRE(&t1 == &t2);  // same cached vector
}
