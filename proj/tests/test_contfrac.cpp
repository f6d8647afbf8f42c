#include "nbsums/contfrac.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace nbsums;
using namespace nbsums::cf;

TEST_CASE("cf_expand on 5/8 gives the hand Euclidean expansion") {
    const CFExpansion e = cf_expand(5, 8);
    REQUIRE(e.depth() == 4);
    REQUIRE(e.terminated());
    const std::vector<int64_t> want = {1, 1, 1, 2};
    for (int l = 0; l < 4; ++l) REQUIRE(e.quotients[l] == want[l]);
    const std::pair<int64_t, int64_t> conv[] = {{1, 1}, {1, 2}, {2, 3}, {5, 8}};
    for (int l = 1; l <= 4; ++l) {
        auto [p, q] = e.convergent(l);
        REQUIRE(p == conv[l - 1].first);
        REQUIRE(q == conv[l - 1].second);
    }
    REQUIRE(Rational(e.conv_p.back(), e.conv_q.back()) == e.x);
}

TEST_CASE("Fibonacci ratio F40/F41: the Gauss-map fixed-point pattern") {
    BigInt f0 = 1, f1 = 1;  // F_1, F_2
    for (int i = 3; i <= 41; ++i) {
        BigInt f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
    REQUIRE(f1 == BigInt("165580141"));  // F_41
    const CFExpansion e = cf_expand(Rational(f0, f1));
    // canonical expansion [0; 1, 1, ..., 1, 2]: the trailing 1,1 collapses
    REQUIRE(e.depth() == 39);
    for (int l = 0; l + 1 < e.depth(); ++l) REQUIRE(e.quotients[l] == 1);
    REQUIRE(e.quotients[e.depth() - 1] == 2);
    // every tail is again a Fibonacci ratio: alpha_1 = F_39/F_40
    REQUIRE(e.alpha(1) == Rational(f1 - f0, f0));
}

TEST_CASE("cf_expand edge cases") {
    const CFExpansion e = cf_expand(1, 3);
    REQUIRE(e.depth() == 1);
    REQUIRE(e.quotients[0] == 3);
    REQUIRE(e.gammas.size() == 1);
    REQUIRE(e.gamma(0) == Catch::Approx(std::log(3.0)).epsilon(1e-14));

    const CFExpansion one = cf_expand(1, 1);  // x = 1 -> [0; 1]
    REQUIRE(one.depth() == 1);
    REQUIRE(one.quotients[0] == 1);

    REQUIRE_THROWS_AS(cf_expand(0, 1), domain_error);

    const CFExpansion t = cf_expand(Rational(5, 8), 2);
    REQUIRE(t.truncated);
    REQUIRE(t.depth() == 2);
}

TEST_CASE("convergent recurrence and exact tail identities on random rationals") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int64_t> den(2, int64_t(1) << 62);
    for (int trial = 0; trial < 200; ++trial) {
        const int64_t q = den(rng);
        std::uniform_int_distribution<int64_t> num(1, q - 1);
        const int64_t p = num(rng);
        const CFExpansion e = cf_expand(Rational(p, q));
        const int L = e.depth();
        // p_{l+1} = a_{l+1} p_l + p_{l-1}
        for (int l = 1; l + 1 <= L; ++l) {
            REQUIRE(e.conv_p[l + 1] ==
                    e.quotients[l] * e.conv_p[l] + e.conv_p[l - 1]);
            REQUIRE(e.conv_q[l + 1] ==
                    e.quotients[l] * e.conv_q[l] + e.conv_q[l - 1]);
        }
        REQUIRE(Rational(e.conv_p[L], e.conv_q[L]) == e.x);
        // alpha_s alpha_{s+1} <= 1/2, exact arithmetic
        for (int s = 0; s + 1 < L; ++s)
            REQUIRE(e.alpha(s) * e.alpha(s + 1) <= Rational(1, 2));
        // beta_s = 1/(q_{s+1} + alpha_{s+1} q_s), exact
        for (int s = 0; s + 1 <= L; ++s) {
            const Rational rhs =
                1 / (Rational(e.conv_q[s + 1]) + e.alpha(s + 1) * e.conv_q[s]);
            REQUIRE(e.beta(s) == rhs);
        }
        // log q_s <= 2 sum log b_j + s log 2
        double logsum = 0.0;
        for (int s = 1; s <= L; ++s) {
            logsum += std::log(to_double(e.quotients[s - 1]));
            REQUIRE(std::log(to_double(e.conv_q[s])) <=
                    2.0 * logsum + s * kLog2 + 1e-9);
        }
    }
}

TEST_CASE("cell_of matches the hand examples") {
    const Cell c2 = cell_of(std::vector<int64_t>{2});
    REQUIRE(c2.low == Rational(1, 3));
    REQUIRE(c2.high == Rational(1, 2));
    REQUIRE(c2.length == Rational(1, 6));

    const Cell c1 = cell_of(std::vector<int64_t>{1});
    REQUIRE(c1.low == Rational(1, 2));
    REQUIRE(c1.high == Rational(1, 1));
    REQUIRE(c1.length == Rational(1, 2));

    const Cell c11 = cell_of(std::vector<int64_t>{1, 1});
    REQUIRE(c11.low == Rational(1, 2));
    REQUIRE(c11.high == Rational(2, 3));
    REQUIRE(c11.length == Rational(1, 6));

    REQUIRE_THROWS_AS(cell_of(std::vector<int64_t>{}), domain_error);
    REQUIRE_THROWS_AS(cell_of(std::vector<int64_t>{1, 0}), domain_error);
}

TEST_CASE("cell length equals 1/(q_s(q_s+q_{s-1})) and bounds hold") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int64_t> bq(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int64_t> b(1 + static_cast<int>(rng() % 5));
        for (auto& x : b) x = bq(rng);
        const Cell c = cell_of(b);
        REQUIRE(c.high - c.low == c.length);
        double blog = 0.0;
        for (auto x : b) blog += std::log(static_cast<double>(x));
        REQUIRE(std::log(to_double(c.length)) <= -2.0 * blog + 1e-9);
    }
}

TEST_CASE("depth-s cells contain exactly the points with that quotient prefix") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int64_t> den(1000, 1'000'000);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const int64_t q = den(rng);
        std::uniform_int_distribution<int64_t> num(1, q - 1);
        const Rational x(num(rng), q);
        const CFExpansion e = cf_expand(x);
        const int s = 3;
        if (e.depth() < s + 2) continue;  // keep x away from cell boundaries
        std::vector<BigInt> prefix(e.quotients.begin(), e.quotients.begin() + s);
        const Cell c = cell_of(prefix);
        REQUIRE(c.contains(x));
        // perturbing the last quotient moves x outside
        prefix[s - 1] += 1;
        REQUIRE(!cell_of(prefix).contains(x));
        ++checked;
    }
    REQUIRE(checked > 1000);
}

TEST_CASE("gauss_measure closed form") {
    REQUIRE(gauss_measure(0.0, 1.0) == Catch::Approx(1.0).margin(1e-15));
    REQUIRE(gauss_measure(0.0, 0.5) ==
            Catch::Approx(0.5849625007211562).margin(1e-14));
    REQUIRE(gauss_measure(0.3, 0.3) == 0.0);
    REQUIRE_THROWS_AS(gauss_measure(0.5, 0.4), domain_error);
}

TEST_CASE("wilton_partial_L") {
    const CFExpansion e3 = cf_expand(1, 3);
    REQUIRE(wilton_partial_L(e3, 0) == Catch::Approx(std::log(3.0)).epsilon(1e-13));
    REQUIRE_THROWS_AS(wilton_partial_L(e3, 1), domain_error);

    // golden-ratio approximant: gamma_0 - gamma_1 from Fibonacci tails
    BigInt f0 = 1, f1 = 1;
    for (int i = 3; i <= 41; ++i) {
        BigInt f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
    const CFExpansion eg = cf_expand(Rational(f0, f1));
    // alpha_0 = F40/F41, alpha_1 = F39/F40
    const double f41 = to_double(f1), f40 = to_double(f0);
    const double f39 = f41 - f40;
    const double expect =
        std::log(f41 / f40) - (f40 / f41) * std::log(f40 / f39);
    REQUIRE(wilton_partial_L(eg, 1) == Catch::Approx(expect).epsilon(1e-12));

    // any x: s = 0 gives log(1/x)
    const CFExpansion e = cf_expand(7, 19);
    REQUIRE(wilton_partial_L(e, 0) ==
            Catch::Approx(std::log(19.0 / 7.0)).epsilon(1e-13));
}
