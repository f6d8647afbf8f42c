#pragma once

// The Moebius-weighted sums S(k, D) = sum_{k^D <= n < 2k^D} mu(n) g(n/k)
// and their Vaughan split
//   S = S1 + S2 + S3,  Si = sum c_i(n) g(n/k),  w = k^{2 delta0},
// plus the threshold split S1 = S11 + S12 over triples (s, t, gamma):
//   s,t >= w, k^D <= s t gamma < 2 k^D, weight mu(gamma) c4(s) c4(t),
//   S11 collects s t >= k^{4 delta0 + 4 v0}, S12 the rest.
// g values are cached per denominator (at most k-1 distinct points mod 1).

#include "nbsums/arith.hpp"
#include "nbsums/common.hpp"
#include "nbsums/gfunc.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nbsums::thm {

struct TheoremSumReport {
    int64_t k = 0;
    double D = 0.0;
    double delta0 = 0.0;
    double v0 = 0.0;
    double z0 = 0.0;
    double w = 0.0;
    double S = 0.0;
    double sigma1 = 0.0, sigma2 = 0.0, sigma3 = 0.0;
    double sigma11 = 0.0, sigma12 = 0.0;
    double normalized = 0.0;  // |S| / k^{D - z0}
};

inline TheoremSumReport theorem_sum(int64_t k, double D, double delta0,
                                    double v0, double z0,
                                    const arith::MoebiusTable& mt,
                                    const gfn::GEvaluator& ge) {
    if (k < 2) throw domain_error("theorem_sum: k >= 2 required");
    if (D < 2.0) throw domain_error("theorem_sum: D >= 2 required");
    const double kD = std::pow(static_cast<double>(k), D);
    if (kD > 9e15) throw resource_error("theorem_sum: k^D overflows index type");
    const int64_t n_lo = static_cast<int64_t>(std::ceil(kD));
    const int64_t n_hi = static_cast<int64_t>(std::ceil(2.0 * kD));  // [n_lo, n_hi)
    if (n_hi - 1 > mt.limit) throw domain_error("theorem_sum: sieve too small");

    TheoremSumReport r;
    r.k = k;
    r.D = D;
    r.delta0 = delta0;
    r.v0 = v0;
    r.z0 = z0;
    r.w = std::pow(static_cast<double>(k), 2.0 * delta0);

    const std::vector<double>& gtab = ge.g_table(k);
    const arith::VaughanDecomposition vd = arith::vaughan_decompose(mt, r.w);

    long double S = 0.0L, s1 = 0.0L, s2 = 0.0L, s3 = 0.0L;
    for (int64_t n = n_lo; n < n_hi; ++n) {
        const double gv = gtab[n % k];
        if (mt.mu[n] != 0) S += mt.mu[n] * gv;
        if (vd.c1[n] != 0) s1 += static_cast<long double>(vd.c1[n]) * gv;
        const int64_t c2 = vd.C2(n, mt);
        if (c2 != 0) s2 += static_cast<long double>(c2) * gv;
        if (vd.c3[n] != 0) s3 += static_cast<long double>(vd.c3[n]) * gv;
    }

    // split of S1 over triples (s, t, gamma) by the s*t threshold
    const double st_threshold =
        std::pow(static_cast<double>(k), 4.0 * delta0 + 4.0 * v0);
    const int64_t lo = static_cast<int64_t>(std::ceil(r.w));
    long double s11 = 0.0L, s12 = 0.0L;
    for (int64_t s = lo; s * lo < n_hi; ++s) {
        if (vd.c4[s] == 0) continue;
        for (int64_t t = lo; s * t < n_hi; ++t) {
            if (vd.c4[t] == 0) continue;
            const int64_t st = s * t;
            const int64_t g_lo = (n_lo + st - 1) / st;  // ceil(k^D / st)
            const int64_t g_hi = (n_hi + st - 1) / st;  // gamma < ceil(2k^D / st)
            if (g_lo >= g_hi) continue;
            const bool big = (static_cast<double>(st) >= st_threshold);
            long double acc = 0.0L;
            for (int64_t gam = g_lo; gam < g_hi; ++gam) {
                if (mt.mu[gam] == 0) continue;
                acc += static_cast<long double>(mt.mu[gam]) * gtab[(st * gam) % k];
            }
            const long double contrib =
                static_cast<long double>(vd.c4[s]) * vd.c4[t] * acc;
            if (big)
                s11 += contrib;
            else
                s12 += contrib;
        }
    }

    r.S = static_cast<double>(S);
    r.sigma1 = static_cast<double>(s1);
    r.sigma2 = static_cast<double>(s2);
    r.sigma3 = static_cast<double>(s3);
    r.sigma11 = static_cast<double>(s11);
    r.sigma12 = static_cast<double>(s12);
    r.normalized = std::abs(r.S) / std::pow(static_cast<double>(k), D - z0);
    return r;
}

}  // namespace nbsums::thm
