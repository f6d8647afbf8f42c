#pragma once

// Evaluation of A(lambda) = \int_0^inf {t}{lambda t} dt/t^2.
//
// Between consecutive breakpoints (integers n and multiples m/lambda) the
// integrand is (t-a)(lambda t-b)/t^2 with a = floor(t), b = floor(lambda t)
// constant, so each piece has the exact antiderivative
//   lambda t - (a lambda + b) log t - a b / t.
// The integral over [0, T] is summed piece by piece in long double.
//
// Tail beyond T, for rational lambda = p/q: the integrand numerator
// h(t) = {t}{pt/q} is periodic with period q.  Choosing T a multiple of q,
//   \int_T^inf h(t)/t^2 dt = \int_T^{T+q} h(u) S(u) du,
//   S(u) = sum_{j>=0} (u+jq)^{-2} = (1/q^2) psi_1(u/q),
// and the trigamma asymptotic series
//   S(u) = 1/(qu) + 1/(2u^2) + q/(6u^3) - q^3/(30u^5) + q^5/(42u^7) - ...
// turns the tail into five more piecewise-exact integrals.  With T >= 12 q
// the truncation error is below ~1e-13.  For large q (grid nodes in lowest
// terms) a mean-value tail is used instead: the mean of {t}{(p/q)t} is
// exactly 1/4 + 1/(12 p q), so tail ~ (1/4 + 1/(12pq))/T with the remaining
// oscillation reported as the error estimate.

#include "nbsums/common.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace nbsums::afn {

struct AEval {
    double value = 0.0;
    double abs_err = 0.0;
    double t_cut = 0.0;
};

namespace detail {

// \int_{u1}^{u2} u^e du
inline long double ipow(long double u1, long double u2, int e) {
    if (e == -1) return std::log(u2 / u1);
    long double ee = e + 1;
    return (std::pow(u2, ee) - std::pow(u1, ee)) / ee;
}

}  // namespace detail

// Exact piecewise evaluation at rational lambda = p/q (any p >= 0, q >= 1).
// q_cap bounds the denominators for which the period-exact tail is used.
inline AEval eval_A_rational(int64_t p, int64_t q, double t_min = 2000.0,
                             int64_t q_cap = 2000) {
    if (p < 0 || q <= 0) throw domain_error("eval_A_rational: lambda < 0");
    if (p == 0) return {0.0, 0.0, 0.0};
    const int64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    const long double lam = static_cast<long double>(p) / q;
    const bool exact_tail = (q <= q_cap);

    int64_t T;
    if (exact_tail) {
        int64_t periods = std::max<int64_t>(
            static_cast<int64_t>(std::ceil(t_min / static_cast<double>(q))), 12);
        T = periods * q;
    } else {
        T = std::max<int64_t>(static_cast<int64_t>(t_min) * 4,
                              (8 * q) / p + 1);
    }

    // main integral over [0, T]; breakpoints scaled by p (u = t*p is integer
    // exactly at every breakpoint)
    long double acc = 0.0;
    {
        int64_t a = 0, b = 0, u = 0;
        const int64_t u_end = T * p;
        while (u < u_end) {
            const int64_t u_int = (a + 1) * p;
            const int64_t u_lam = (b + 1) * q;
            const int64_t u2 = std::min({u_int, u_lam, u_end});
            const long double t1 = static_cast<long double>(u) / p;
            const long double t2 = static_cast<long double>(u2) / p;
            if (u == 0) {
                acc += lam * t2;  // a = b = 0
            } else {
                long double piece = lam * (t2 - t1);
                const long double c1 = a * lam + b;
                if (c1 != 0) piece -= c1 * std::log1p((t2 - t1) / t1);
                const long double ab = static_cast<long double>(a) * b;
                if (ab != 0) piece += ab * (1.0L / t1 - 1.0L / t2);
                acc += piece;
            }
            if (u2 == u_int) ++a;
            if (u2 == u_lam) ++b;
            u = u2;
        }
    }

    long double tail = 0.0;
    double err = 0.0;
    if (exact_tail) {
        // one period [T, T+q) against the trigamma series
        const long double qd = static_cast<long double>(q);
        const long double coeff[5] = {1.0L / qd, 0.5L, qd / 6.0L,
                                      -qd * qd * qd / 30.0L,
                                      qd * qd * qd * qd * qd / 42.0L};
        const int mexp[5] = {1, 2, 3, 5, 7};
        long double last_term = 0.0;
        int64_t a = T, u = T * p;
        int64_t b = T / q * p;  // floor(lam*T) = T p / q, integer since q | T
        const int64_t u_end = (T + q) * p;
        while (u < u_end) {
            const int64_t u_int = (a + 1) * p;
            const int64_t u_lam = (b + 1) * q;
            const int64_t u2 = std::min({u_int, u_lam, u_end});
            const long double t1 = static_cast<long double>(u) / p;
            const long double t2 = static_cast<long double>(u2) / p;
            const long double c1 = a * lam + b;
            const long double ab = static_cast<long double>(a) * b;
            for (int j = 0; j < 5; ++j) {
                const int m = mexp[j];
                const long double im = lam * detail::ipow(t1, t2, 2 - m) -
                                       c1 * detail::ipow(t1, t2, 1 - m) +
                                       ab * detail::ipow(t1, t2, -m);
                tail += coeff[j] * im;
                if (j == 4) last_term += coeff[j] * im;
            }
            if (u2 == u_int) ++a;
            if (u2 == u_lam) ++b;
            u = u2;
        }
        err = std::max(1e-14, 0.05 * std::abs(static_cast<double>(last_term)));
    } else {
        const double mean = 0.25 + 1.0 / (12.0 * static_cast<double>(p) *
                                          static_cast<double>(q));
        tail = mean / static_cast<long double>(T);
        const double lamd = static_cast<double>(lam);
        err = (0.5 + 0.5 / lamd) / (static_cast<double>(T) * T);
    }

    return {static_cast<double>(acc + tail), err, static_cast<double>(T)};
}

// rationalize a double by its continued fraction, denominators capped
inline void rationalize(double lambda, int64_t den_cap, int64_t& p, int64_t& q) {
    double x = lambda;
    int64_t p0 = 1, q0 = 0, p1 = static_cast<int64_t>(std::floor(x)), q1 = 1;
    x -= std::floor(x);
    for (int it = 0; it < 64 && x > 1e-18; ++it) {
        x = 1.0 / x;
        const double fa = std::floor(x);
        if (fa > 9e17) break;
        const int64_t a = static_cast<int64_t>(fa);
        if (a * q1 + q0 > den_cap || a * q1 + q0 < 0) break;
        const int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        x -= fa;
    }
    p = p1;
    q = q1;
}

// A(lambda) for real lambda >= 0 with an absolute error budget.
inline double eval_A(double lambda, double tol) {
    if (lambda < 0) throw domain_error("eval_A: lambda < 0");
    if (tol <= 0) throw domain_error("eval_A: tol <= 0");
    if (lambda == 0) return 0.0;
    if (lambda < 1e-7) {
        // A(lambda) ~ (lambda/2) log(1/lambda) + O(lambda)
        const double est = 0.5 * lambda * std::log(1.0 / lambda) + lambda;
        if (2.0 * lambda * std::log(1.0 / lambda) > tol)
            throw accuracy_error("eval_A: tol unachievable near lambda = 0");
        return est;
    }
    int64_t p, q;
    rationalize(lambda, 1'000'000'000, p, q);
    const double approx_err = std::abs(lambda - static_cast<double>(p) / q);
    const double rat_err =
        approx_err > 0
            ? 0.5 * approx_err * std::log(1.0 / approx_err) + 5 * approx_err
            : 0.0;
    // escalate the cutoff until the tail estimate fits the budget
    double total_err = 0.0, value = 0.0;
    for (double t_min : {2000.0, 2e4, 2e5, 2e6}) {
        const AEval r = eval_A_rational(p, q, t_min, 100000);
        value = r.value;
        total_err = r.abs_err + rat_err;
        if (total_err <= tol) return value;
    }
    throw accuracy_error("eval_A: achieved abs err " + std::to_string(total_err) +
                         " > tol");
}

// ---------------------------------------------------------------------------
// uniform table of A on [0, 1] with linear interpolation
// ---------------------------------------------------------------------------

struct ATable {
    int64_t n_nodes = 0;
    double spacing = 0.0;
    std::vector<double> values;
    double tail_cutoff = 0.0;     // largest T used while filling nodes
    double target_abs_err = 0.0;  // node error + interpolation bound

    static ATable build(int64_t n_nodes = 200000, double t_min = 2000.0,
                        int threads = 0) {
        if (n_nodes < 2) throw domain_error("ATable: need >= 2 nodes");
        ATable tab;
        tab.n_nodes = n_nodes;
        const int64_t G = n_nodes - 1;
        tab.spacing = 1.0 / static_cast<double>(G);
        tab.values.assign(n_nodes, 0.0);
        std::vector<double> errs(n_nodes, 0.0), cuts(n_nodes, 0.0);
        parallel_for(
            n_nodes,
            [&](int64_t i) {
                if (i == 0) return;
                AEval r = eval_A_rational(i, G, t_min);
                tab.values[i] = r.value;
                errs[i] = r.abs_err;
                cuts[i] = r.t_cut;
            },
            threads);
        double node_err = 0.0;
        for (int64_t i = 0; i < n_nodes; ++i) {
            node_err = std::max(node_err, errs[i]);
            tab.tail_cutoff = std::max(tab.tail_cutoff, cuts[i]);
        }
        const double h = tab.spacing;
        tab.target_abs_err = node_err + 0.5 * h * std::log(1.0 / h) + 5 * h;
        return tab;
    }

    double interp(double lambda) const {
        if (lambda < 0.0 || lambda > 1.0)
            throw domain_error("ATable::interp: lambda outside [0,1]");
        const double x = lambda * static_cast<double>(n_nodes - 1);
        int64_t i = static_cast<int64_t>(x);
        if (i >= n_nodes - 1) i = n_nodes - 2;
        const double f = x - static_cast<double>(i);
        return values[i] * (1.0 - f) + values[i + 1] * f;
    }
};

}  // namespace nbsums::afn
