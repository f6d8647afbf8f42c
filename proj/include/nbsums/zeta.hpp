#pragma once

// zeta(1/2 + it) by Euler-Maclaurin summation:
//   zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//             + sum_{k=1}^{4} B_{2k}/(2k)! (s)(s+1)...(s+2k-2) N^{1-s-2k}
// with N ~ 2|t| the correction series is deep in its asymptotic regime; the
// magnitude of the first omitted (B_10) term is reported as err_est.
// Partial sums are accumulated smallest-first.

#include "nbsums/common.hpp"

#include <cmath>
#include <complex>

namespace nbsums::zt {

struct CriticalLineValue {
    double t = 0.0;
    std::complex<double> z;
    double err_est = 0.0;
};

inline CriticalLineValue zeta_half(double t) {
    if (std::abs(t) > 1e4)
        throw accuracy_error("zeta_half: |t| beyond validated range (1e4)");
    const std::complex<double> s(0.5, t);
    const int64_t N =
        std::max<int64_t>(30, static_cast<int64_t>(std::ceil(2.0 * std::abs(t))));

    std::complex<double> sum = 0.0;
    for (int64_t n = N - 1; n >= 1; --n) {
        const double ln = std::log(static_cast<double>(n));
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        sum += std::complex<double>(amp * std::cos(t * ln), -amp * std::sin(t * ln));
    }

    const double lnN = std::log(static_cast<double>(N));
    const auto npow = [&](const std::complex<double>& e) {
        // N^e for complex exponent e
        return std::exp(e * lnN);
    };
    sum += npow(1.0 - s) / (s - 1.0);
    const std::complex<double> Nms = npow(-s);
    sum += 0.5 * Nms;

    // B_{2k}/(2k)! for k = 1..5 (last one only for the error estimate)
    static const double b_over_fact[5] = {1.0 / 12.0, -1.0 / 720.0,
                                          1.0 / 30240.0, -1.0 / 1209600.0,
                                          1.0 / 47900160.0};
    std::complex<double> poly = s;  // (s)(s+1)...(s+2k-2)
    std::complex<double> npow_term = Nms / static_cast<double>(N);  // N^{-s-1}
    std::complex<double> correction = 0.0;
    double err = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const std::complex<double> term = b_over_fact[k - 1] * poly * npow_term;
        if (k <= 4) {
            correction += term;
        } else {
            err = std::abs(term);
        }
        poly *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow_term /= static_cast<double>(N) * static_cast<double>(N);
    }
    sum += correction;

    CriticalLineValue v;
    v.t = t;
    v.z = sum;
    v.err_est = err + 1e-15 * static_cast<double>(N);
    return v;
}

// Riemann-Siegel theta, asymptotic form (adequate for t >= 5)
inline double riemann_siegel_theta(double t) {
    const double pi = std::acos(-1.0);
    return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 +
           1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
}

// Hardy Z(t) = e^{i theta(t)} zeta(1/2+it), real-valued on the line
inline double hardy_Z(double t) {
    const CriticalLineValue v = zeta_half(t);
    const double th = riemann_siegel_theta(t);
    return std::cos(th) * v.z.real() - std::sin(th) * v.z.imag();
}

}  // namespace nbsums::zt
