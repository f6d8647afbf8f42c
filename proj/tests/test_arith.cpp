#include "nbsums/arith.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace nbsums;
using namespace nbsums::arith;

namespace {
const MoebiusTable& table_1e5() {
    static MoebiusTable t = MoebiusTable::build(100000);
    return t;
}

// brute-force F(u) straight from the definition, as an independent oracle
int64_t brute_F(int64_t u, double w, const MoebiusTable& mt) {
    int64_t acc = 0;
    for (int64_t s = 1; s <= u; ++s) {
        if (u % s) continue;
        const int64_t t = u / s;
        int64_t inner_s = 0, inner_t = 0;
        for (int64_t d1 = 1; d1 <= s; ++d1)
            if (s % d1 == 0 && static_cast<double>(d1) <= w) inner_s += mt.mu[d1];
        for (int64_t e1 = 1; e1 <= t; ++e1)
            if (t % e1 == 0 && static_cast<double>(e1) <= w) inner_t += mt.mu[e1];
        acc += inner_s * inner_t;
    }
    return acc;
}
}  // namespace

TEST_CASE("sieve basics") {
    const auto& mt = table_1e5();
    REQUIRE(mt.mu[1] == 1);
    REQUIRE(mt.mu[2] == -1);
    REQUIRE(mt.mu[4] == 0);
    REQUIRE(mt.mu[6] == 1);
    REQUIRE(mt.d[1] == 1);
    REQUIRE(mt.d[12] == 6);
    REQUIRE(mt.d[60] == 12);
    // d4(6) = sum_{ab=6} d(a)d(b) = 1*4 + 2*2 + 2*2 + 4*1
    REQUIRE(mt.d4[6] == 16);
    REQUIRE(mt.d4[1] == 1);
    // squarefree density ~ 6/pi^2 within 1%
    int64_t sqfree = 0;
    for (int64_t n = 1; n <= mt.limit; ++n) sqfree += mt.mu[n] * mt.mu[n];
    const double density = static_cast<double>(sqfree) / mt.limit;
    REQUIRE(density == Catch::Approx(0.6079271018540267).epsilon(0.01));
}

TEST_CASE("mod_inverse") {
    REQUIRE(mod_inverse(1, 7) == 1);
    REQUIRE(mod_inverse(3, 7) == 5);
    REQUIRE_THROWS_AS(mod_inverse(6, 9), domain_error);
    for (int64_t k : {5, 12, 101, 997}) {
        for (int64_t h = 1; h < k; ++h) {
            if (std::gcd(h, k) != 1) continue;
            const int64_t hb = mod_inverse(h, k);
            REQUIRE((h * hb) % k == 1);
            REQUIRE(mod_inverse(hb, k) == h);  // involution
        }
    }
}

TEST_CASE("Vaughan identity coefficients by hand at n = 1, w = 2") {
    const auto& mt = table_1e5();
    const auto vd = vaughan_decompose(mt, 2.0);
    REQUIRE(vd.C1(1) == 0);
    REQUIRE(vd.C2(1, mt) == 2);
    REQUIRE(vd.C3(1) == -1);
}

TEST_CASE("Vaughan identity exact for all n <= 1e4, several w") {
    const auto& mt = table_1e5();
    for (double w : {2.0, 10.0, 50.0}) {
        const auto vd = vaughan_decompose(mt, w);
        const int64_t w2 = static_cast<int64_t>(w * w);
        for (int64_t n = 1; n <= 10000; ++n) {
            REQUIRE(vd.C1(n) + vd.C2(n, mt) + vd.C3(n) == mt.mu[n]);
            if (static_cast<double>(n) > w) REQUIRE(vd.C2(n, mt) == 0);
            if (n < w2) REQUIRE(vd.C1(n) == 0);  // a,b >= w forces n >= w^2
        }
    }
}

TEST_CASE("w >= n makes c1 vanish and c2 + c3 = mu") {
    const auto& mt = table_1e5();
    const auto vd = vaughan_decompose(mt, 600.0);
    for (int64_t n = 1; n <= 500; ++n) {
        REQUIRE(vd.C1(n) == 0);
        REQUIRE(vd.C2(n, mt) + vd.C3(n) == mt.mu[n]);
    }
}

TEST_CASE("vaughan_F: definition oracle and the d4 bound") {
    const auto& mt = table_1e5();
    for (double w : {2.0, 10.0}) {
        const auto vd = vaughan_decompose(mt, w);
        REQUIRE(vaughan_F(1, vd) == 1);
        for (int64_t u = 1; u <= 200; ++u)
            REQUIRE(vaughan_F(u, vd) == brute_F(u, w, mt));
    }
    const auto vd = vaughan_decompose(mt, 50.0);
    for (int64_t u = 1; u <= 100000; ++u)
        REQUIRE(std::abs(vaughan_F(u, vd)) <= mt.d4[u]);
}
