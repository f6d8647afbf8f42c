#pragma once

// Integer tables: Moebius/divisor sieves, modular inverses, and the Vaughan
// identity coefficients
//   mu(n) = c1(n) + c2(n) + c3(n),   w > 1,
//   c1(n) = sum_{abc=n, a>=w, b>=w} mu(c) c4(a) c4(b),
//   c4(a) = -sum_{d1 d2 = a, d1<=w} mu(d1),
//   c2(n) = 2 mu(n) [n<=w],
//   c3(n) = -sum_{abc=n, a<=w, b<=w} mu(a) mu(b).
// All coefficient tables are exact integers.  c1 is assembled from the c4
// table by divisor-pair enumeration (O(N log N)), never by triple loops.

#include "nbsums/common.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace nbsums::arith {

struct MoebiusTable {
    int64_t limit = 0;
    std::vector<int8_t> mu;   // mu[1..N]
    std::vector<int32_t> d;   // d[1..N]
    std::vector<int64_t> d4;  // (d*d)[1..N], Dirichlet convolution

    static MoebiusTable build(int64_t N) {
        if (N < 1) throw domain_error("MoebiusTable: N >= 1 required");
        if (N > (int64_t)4e8) throw resource_error("MoebiusTable: N too large");
        MoebiusTable t;
        t.limit = N;
        t.mu.assign(N + 1, 0);
        t.d.assign(N + 1, 0);
        t.mu[1] = 1;
        t.d[1] = 1;

        // linear sieve: smallest prime factor exponent tracking for mu and d
        std::vector<int32_t> spf(N + 1, 0), cnt(N + 1, 0);
        std::vector<int32_t> primes;
        for (int64_t i = 2; i <= N; ++i) {
            if (spf[i] == 0) {
                spf[i] = static_cast<int32_t>(i);
                primes.push_back(static_cast<int32_t>(i));
                t.mu[i] = -1;
                t.d[i] = 2;
                cnt[i] = 1;
            }
            for (int32_t p : primes) {
                const int64_t ip = i * p;
                if (p > spf[i] || ip > N) break;
                spf[ip] = p;
                if (i % p == 0) {
                    t.mu[ip] = 0;
                    cnt[ip] = cnt[i] + 1;
                    t.d[ip] = t.d[i] / (cnt[i] + 1) * (cnt[i] + 2);
                } else {
                    t.mu[ip] = -t.mu[i];
                    cnt[ip] = 1;
                    t.d[ip] = t.d[i] * 2;
                }
            }
        }

        t.d4.assign(N + 1, 0);
        for (int64_t a = 1; a <= N; ++a)
            for (int64_t b = 1; a * b <= N; ++b)
                t.d4[a * b] += static_cast<int64_t>(t.d[a]) * t.d[b];
        return t;
    }
};

inline int64_t mod_inverse(int64_t h, int64_t k) {
    if (k < 2) throw domain_error("mod_inverse: k >= 2 required");
    int64_t a = ((h % k) + k) % k, b = k;
    int64_t x0 = 1, x1 = 0;
    while (b != 0) {
        const int64_t q = a / b;
        int64_t tmp = a - q * b;
        a = b;
        b = tmp;
        tmp = x0 - q * x1;
        x0 = x1;
        x1 = tmp;
    }
    if (a != 1) throw domain_error("mod_inverse: gcd(h,k) != 1");
    return ((x0 % k) + k) % k;
}

// ---------------------------------------------------------------------------
// Vaughan decomposition with real cutoff w
// ---------------------------------------------------------------------------

struct VaughanDecomposition {
    int64_t limit = 0;
    double w = 0.0;
    std::vector<int64_t> c1;
    std::vector<int64_t> c3;
    std::vector<int64_t> c4;

    int64_t C1(int64_t n) const { return c1[n]; }
    int64_t C2(int64_t n, const MoebiusTable& mt) const {
        return (static_cast<double>(n) <= w) ? 2 * mt.mu[n] : 0;
    }
    int64_t C3(int64_t n) const { return c3[n]; }
    int64_t C4(int64_t n) const { return c4[n]; }

    static VaughanDecomposition build(const MoebiusTable& mt, double w) {
        if (w <= 1.0) throw domain_error("vaughan_decompose: w > 1 required");
        const int64_t N = mt.limit;
        VaughanDecomposition v;
        v.limit = N;
        v.w = w;

        // c4(a) = -sum_{d1|a, d1<=w} mu(d1)
        v.c4.assign(N + 1, 0);
        for (int64_t d1 = 1; d1 <= N && static_cast<double>(d1) <= w; ++d1) {
            if (mt.mu[d1] == 0) continue;
            for (int64_t a = d1; a <= N; a += d1) v.c4[a] -= mt.mu[d1];
        }

        // h(m) = sum_{ab=m, a>=w, b>=w} c4(a) c4(b); c1 = mu * h
        std::vector<int64_t> hconv(N + 1, 0);
        const int64_t lo = static_cast<int64_t>(std::ceil(w));
        for (int64_t a = lo; a * lo <= N; ++a) {
            if (v.c4[a] == 0) continue;
            for (int64_t b = lo; a * b <= N; ++b)
                hconv[a * b] += v.c4[a] * v.c4[b];
        }
        v.c1.assign(N + 1, 0);
        for (int64_t g = 1; g <= N; ++g) {
            if (mt.mu[g] == 0) continue;
            for (int64_t m = 1; g * m <= N; ++m) {
                if (hconv[m] != 0) v.c1[g * m] += mt.mu[g] * hconv[m];
            }
        }

        // e(m) = sum_{ab=m, a<=w, b<=w} mu(a) mu(b); c3 = -(e * 1)
        std::vector<int64_t> e;
        const int64_t wf = std::min<int64_t>(static_cast<int64_t>(w), N);
        e.assign(std::min(N, wf * wf) + 1, 0);
        for (int64_t a = 1; a <= wf; ++a) {
            if (mt.mu[a] == 0) continue;
            for (int64_t b = 1; b <= wf && a * b <= N; ++b)
                e[a * b] += static_cast<int64_t>(mt.mu[a]) * mt.mu[b];
        }
        v.c3.assign(N + 1, 0);
        for (int64_t m = 1; m < static_cast<int64_t>(e.size()); ++m) {
            if (e[m] == 0) continue;
            for (int64_t n = m; n <= N; n += m) v.c3[n] -= e[m];
        }
        return v;
    }
};

inline VaughanDecomposition vaughan_decompose(const MoebiusTable& mt, double w) {
    return VaughanDecomposition::build(mt, w);
}

// F(u) = sum_{st=u} [sum_{d1 d2 = s, d1<=w} mu(d1)] [sum_{e1 e2 = t, e1<=w} mu(e1)]
//      = sum_{st=u} c4(s) c4(t);  |F(u)| <= d4(u)
inline int64_t vaughan_F(int64_t u, const VaughanDecomposition& v) {
    if (u < 1 || u > v.limit) throw domain_error("vaughan_F: u out of table range");
    int64_t acc = 0;
    for (int64_t s = 1; s * s <= u; ++s) {
        if (u % s) continue;
        const int64_t t = u / s;
        acc += v.c4[s] * v.c4[t];
        if (t != s) acc += v.c4[t] * v.c4[s];
    }
    return acc;
}

}  // namespace nbsums::arith
