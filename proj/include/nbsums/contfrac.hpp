#pragma once

// Exact continued-fraction engine for rationals in (0, 1].
//
// The Gauss map alpha(x) = {1/x} generates the expansion
//   x = [0; a_1, a_2, ...],  a_l = floor(1/alpha_{l-1}),
// with tails alpha_l, products beta_l = alpha_0 * ... * alpha_l (beta_{-1}=1)
// and terms gamma_l = beta_{l-1} * log(1/alpha_l).  All integer/rational data
// is exact (arbitrary precision); only gamma_l is a double, computed from the
// exact rationals at the last step.  For a rational of depth L, alpha_L = 0
// and gamma is defined for l = 0..L-1.
//
// Convergent recurrences: p_{l+1} = a_{l+1} p_l + p_{l-1}, same for q.
// Cells C(b_1..b_s) are the intervals of all x whose first s quotients are
// b_1..b_s; endpoints p_s/q_s and (p_s+p_{s-1})/(q_s+q_{s-1}), exact length
// 1/(q_s (q_s + q_{s-1})).  Cells are stored orientation-normalized and
// treated as half-open [low, high).

#include "nbsums/common.hpp"

#include <algorithm>
#include <type_traits>
#include <utility>
#include <vector>

namespace nbsums::cf {

struct CFExpansion {
    Rational x;
    std::vector<BigInt> quotients;  // a_1 .. a_L
    std::vector<BigInt> conv_p;     // p_0 .. p_L   (p_0/q_0 = 0/1)
    std::vector<BigInt> conv_q;     // q_0 .. q_L
    std::vector<Rational> alphas;   // alpha_0 .. alpha_L
    std::vector<Rational> betas;    // beta_{-1} .. beta_L  (betas[l+1] = beta_l)
    std::vector<double> gammas;     // gamma_l for every l with alpha_l != 0
    bool truncated = false;         // max_depth hit before termination

    int depth() const { return static_cast<int>(quotients.size()); }
    bool terminated() const { return !truncated; }

    const Rational& alpha(int l) const { return alphas.at(l); }
    const Rational& beta(int l) const { return betas.at(l + 1); }  // l >= -1
    double gamma(int l) const { return gammas.at(l); }

    // convergent p_l/q_l, l = 0..L
    std::pair<BigInt, BigInt> convergent(int l) const {
        return {conv_p.at(l), conv_q.at(l)};
    }
};

// alpha(x) = {1/x} on exact rationals; alpha(p/q) = (q mod p)/p
inline Rational gauss_map(const Rational& x) {
    if (x == 0) throw domain_error("gauss_map: x = 0");
    const BigInt p = boost::multiprecision::numerator(x);
    const BigInt q = boost::multiprecision::denominator(x);
    return Rational(q % p, p);
}

inline CFExpansion cf_expand(const Rational& x, int max_depth = 1 << 20) {
    if (x <= 0) throw domain_error("cf_expand: need 0 < x <= 1");
    if (x > 1) throw domain_error("cf_expand: need 0 < x <= 1");
    CFExpansion e;
    e.x = x;
    e.conv_p.push_back(0);
    e.conv_q.push_back(1);
    BigInt pm1 = 1, qm1 = 0;  // p_{-1}, q_{-1}
    e.alphas.push_back(x);
    e.betas.push_back(1);  // beta_{-1}

    Rational al = x;
    while (al != 0) {
        if (e.depth() >= max_depth) {
            e.truncated = true;
            break;
        }
        const BigInt num = boost::multiprecision::numerator(al);
        const BigInt den = boost::multiprecision::denominator(al);
        BigInt a = den / num;
        Rational next(den % num, num);

        e.quotients.push_back(a);
        BigInt p_new = a * e.conv_p.back() + pm1;
        BigInt q_new = a * e.conv_q.back() + qm1;
        pm1 = e.conv_p.back();
        qm1 = e.conv_q.back();
        e.conv_p.push_back(p_new);
        e.conv_q.push_back(q_new);

        // gamma_l = beta_{l-1} log(1/alpha_l), defined while alpha_l != 0
        e.gammas.push_back(to_double(e.betas.back()) * (-log_rational(al)));
        e.betas.push_back(e.betas.back() * al);
        e.alphas.push_back(next);
        al = next;
    }
    return e;
}

template <typename I, typename J,
          std::enable_if_t<std::is_integral_v<I> && std::is_integral_v<J>, int> = 0>
inline CFExpansion cf_expand(I p, J q, int max_depth = 1 << 20) {
    return cf_expand(Rational(static_cast<int64_t>(p), static_cast<int64_t>(q)),
                     max_depth);
}

// L(x, s) = sum_{nu=0}^{s} (-1)^nu gamma_nu(x): the alternating partial sum
// of Wilton's series (T^nu l = gamma_nu for the operator Tf(x) = x f(alpha x))
inline double wilton_partial_L(const CFExpansion& e, int s) {
    if (s < 0 || s >= static_cast<int>(e.gammas.size()))
        throw domain_error("wilton_partial_L: depth insufficient for s");
    double acc = 0.0;
    for (int nu = 0; nu <= s; ++nu)
        acc += (nu % 2 == 0 ? e.gammas[nu] : -e.gammas[nu]);
    return acc;
}

// ---------------------------------------------------------------------------
// cells
// ---------------------------------------------------------------------------

struct Cell {
    std::vector<BigInt> quotients;  // b_1 .. b_s
    Rational low, high;             // normalized: low < high, half-open
    Rational length;
    int depth = 0;

    bool contains(const Rational& x) const { return low <= x && x < high; }
};

inline Cell cell_of(const std::vector<BigInt>& b) {
    if (b.empty()) throw domain_error("cell_of: empty quotient sequence");
    for (const auto& bj : b)
        if (bj < 1) throw domain_error("cell_of: quotients must be >= 1");
    BigInt p0 = 1, q0 = 0;  // p_{-1}, q_{-1}
    BigInt p1 = 0, q1 = 1;  // p_0, q_0
    for (const auto& bj : b) {
        BigInt p2 = bj * p1 + p0;
        BigInt q2 = bj * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    Cell c;
    c.quotients = b;
    c.depth = static_cast<int>(b.size());
    Rational e1(p1, q1);
    Rational e2(p1 + p0, q1 + q0);
    c.low = std::min(e1, e2);
    c.high = std::max(e1, e2);
    c.length = Rational(BigInt(1), q1 * (q1 + q0));
    return c;
}

inline Cell cell_of(const std::vector<int64_t>& b) {
    std::vector<BigInt> bb(b.begin(), b.end());
    return cell_of(bb);
}

// ---------------------------------------------------------------------------
// Gauss measure m(E) = (1/log 2) \int_E dx/(1+x)
// ---------------------------------------------------------------------------

inline double gauss_measure(double a, double b) {
    if (a > b) throw domain_error("gauss_measure: need a <= b");
    return (std::log1p(b) - std::log1p(a)) / kLog2;
}

}  // namespace nbsums::cf
