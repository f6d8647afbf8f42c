#pragma once

// Finite cotangent sums and the Gram-matrix closed form.
//
//   c0(h/k) = sum_{l=1}^{k-1} (l/k) cot(pi h l / k)
//   V(h/k)  = sum_{m=1}^{k-1} {mh/k} cot(pi m / k)        (Vasyunin's sum)
//
// The two are related by modular inversion: substituting m -> hbar*j mod k
// in V gives the exact identity V(h/k) = c0(hbar/k), hbar h = 1 mod k.
// Note the argument of cot in V runs over m/k, not mh/k: with cot(pi m h/k)
// the substitution m -> hbar*j collapses the sum to the h-independent
// constant c0(1/k), which breaks both the inversion identity and the
// antisymmetry V(h/k) = -V((k-h)/k); the m/k form satisfies both and is the
// one matching the Gram integral (checked against |zeta|^2 quadrature).
//
// Terms are paired (l, k-l): the pair sum is cot(pi h l / k) (2l-k)/k, which
// keeps the accumulated rounding O(k ulp) near the cot poles.
//
//   b_{h,k} = (log 2pi - gamma)/2 (1/h + 1/k) + (k-h)/(2hk) log(h/k)
//             - pi/(2hk) (V(h/k) + V(k/h))
// extends to non-coprime (h,k) by b_{h,k} = b_{h',k'} / gcd(h,k) with
// (h',k') the reduced pair (substitute t -> gcd * t in the defining
// integral, see nb::verify_bhk_integral for the quadrature cross-check).

#include "nbsums/arith.hpp"
#include "nbsums/common.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

namespace nbsums::sums {

struct RationalPoint {
    int64_t h;
    int64_t k;
    RationalPoint(int64_t h_, int64_t k_) : h(h_), k(k_) {
        if (k < 2) throw domain_error("RationalPoint: k >= 2 required");
        if (h < 1 || h >= k) throw domain_error("RationalPoint: need 1 <= h < k");
        if (std::gcd(h, k) != 1) throw domain_error("RationalPoint: gcd(h,k) != 1");
    }
};

inline double cotangent_c0(int64_t h, int64_t k) {
    RationalPoint p(((h % k) + k) % k, k);
    const double pi = std::acos(-1.0);
    long double acc = 0.0L;
    for (int64_t l = 1; 2 * l < k; ++l) {
        const double ang = pi * static_cast<double>((p.h * l) % k) / static_cast<double>(k);
        acc += 1.0L / std::tan(ang) * static_cast<double>(2 * l - k) / static_cast<double>(k);
    }
    // l = k/2 term vanishes for even k: cot(pi h/2) = 0 for odd h
    return static_cast<double>(acc);
}

inline double cotangent_c0(const RationalPoint& p) { return cotangent_c0(p.h, p.k); }

// V(h/k), h coprime to k after reduction mod k; V on denominator 1 is empty
inline double vasyunin_V(int64_t h, int64_t k) {
    if (k == 1) return 0.0;
    RationalPoint p(((h % k) + k) % k, k);
    const double pi = std::acos(-1.0);
    long double acc = 0.0L;
    for (int64_t m = 1; 2 * m < k; ++m) {
        const double frac = static_cast<double>((p.h * m) % k) / static_cast<double>(k);
        const double ang = pi * static_cast<double>(m) / static_cast<double>(k);
        acc += (2.0 * frac - 1.0) / std::tan(ang);
    }
    // m = k/2 (k even): {h/2} = 1/2, pair weight 2*1/2-1 = 0
    return static_cast<double>(acc);
}

inline double vasyunin_V(const RationalPoint& p) { return vasyunin_V(p.h, p.k); }

// partial sum of D_sin(s, h/k) = sum d(n) sin(2 pi n h/k)/n^s, cut at a full
// multiple of k to suppress the conditionally-convergent drift at s = 1
inline double estermann_partial(double s_param, const RationalPoint& p,
                                int64_t terms, const arith::MoebiusTable& mt) {
    if (terms < p.k) throw domain_error("estermann_partial: terms >= k required");
    if (terms > mt.limit) throw domain_error("estermann_partial: sieve too small");
    const int64_t cut = (terms / p.k) * p.k;
    const double pi = std::acos(-1.0);
    std::vector<double> sin_table(p.k);
    for (int64_t r = 0; r < p.k; ++r) {
        const int64_t m = (r * p.h) % p.k;
        // sin(2 pi m / k) vanishes exactly at m = 0 and 2m = k
        sin_table[r] = (m == 0 || 2 * m == p.k)
                           ? 0.0
                           : std::sin(2.0 * pi * static_cast<double>(m) /
                                      static_cast<double>(p.k));
    }
    long double acc = 0.0L;
    for (int64_t n = cut; n >= 1; --n) {
        const double sn = sin_table[n % p.k];
        if (sn == 0.0) continue;
        const double w = (s_param == 1.0) ? 1.0 / static_cast<double>(n)
                         : (s_param == 0.0)
                             ? 1.0
                             : std::pow(static_cast<double>(n), -s_param);
        acc += static_cast<long double>(mt.d[n]) * sn * w;
    }
    return static_cast<double>(acc);
}

// ---------------------------------------------------------------------------
// Gram entries
// ---------------------------------------------------------------------------

inline double gram_b(int64_t h, int64_t k) {
    if (h < 1 || k < 1) throw domain_error("gram_b: h,k >= 1 required");
    const int64_t g = std::gcd(h, k);
    const int64_t hr = h / g, kr = k / g;
    const double pi = std::acos(-1.0);
    double v = kLog2PiMinusGamma / 2.0 *
               (1.0 / static_cast<double>(hr) + 1.0 / static_cast<double>(kr));
    if (hr != kr)
        v += static_cast<double>(kr - hr) / (2.0 * hr * kr) *
             std::log(static_cast<double>(hr) / static_cast<double>(kr));
    const double vsum = vasyunin_V(hr % kr, kr) + vasyunin_V(kr % hr, hr);
    v -= pi / (2.0 * static_cast<double>(hr) * static_cast<double>(kr)) * vsum;
    return v / static_cast<double>(g);
}

// memoized V-values over reduced fractions, for bulk Gram assembly
class VCache {
  public:
    double V(int64_t a, int64_t b) {
        if (b == 1) return 0.0;
        a %= b;
        const auto key = std::make_pair(a, b);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        const double v = vasyunin_V(a, b);
        std::lock_guard<std::mutex> lk(mu_);
        return memo_.emplace(key, v).first->second;
    }

    double gram_b(int64_t h, int64_t k) {
        const int64_t g = std::gcd(h, k);
        const int64_t hr = h / g, kr = k / g;
        const double pi = std::acos(-1.0);
        double v = kLog2PiMinusGamma / 2.0 *
                   (1.0 / static_cast<double>(hr) + 1.0 / static_cast<double>(kr));
        if (hr != kr)
            v += static_cast<double>(kr - hr) / (2.0 * hr * kr) *
                 std::log(static_cast<double>(hr) / static_cast<double>(kr));
        v -= pi / (2.0 * static_cast<double>(hr) * static_cast<double>(kr)) *
             (V(hr, kr) + V(kr, hr));
        return v / static_cast<double>(g);
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int64_t, int64_t>, double> memo_;
};

}  // namespace nbsums::sums
