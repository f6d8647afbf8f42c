#pragma once

// The weighted-L^2 side: quadrature verification of the Gram entry integral
//   b_{h,k} = 1/(2 pi sqrt(hk)) int |zeta(1/2+it)|^2 (h/k)^{it} dt/(1/4+t^2),
// the V_N coefficients a_n = (1 - log n / log N) mu(n), the linear terms
//   ell_n = (1/2pi) int Re[zeta(1/2+it) n^{-1/2-it}] dt/(1/4+t^2),
// and the distance
//   d_N^2 = 1 - 2 sum a_n ell_n + sum a_h a_k b_{h,k}   (gram route)
//         = (1/2pi) int |1 - zeta D_N|^2 dt/(1/4+t^2)    (direct route).
//
// Tail handling: all integrals are truncated at |t| <= T.  Zero-frequency
// components (the diagonal of |zeta D|^2, the n=1 cross term, the constant 1)
// are corrected with the mean-value model |zeta|^2 ~ log(t/2pi) + 2 gamma and
// the exact weight mass beyond T; purely oscillatory components only
// contribute a reported envelope.  err_est fields carry those envelopes so
// route-agreement checks can assert |gram - direct| <= combined error.

#include "nbsums/arith.hpp"
#include "nbsums/common.hpp"
#include "nbsums/cotsums.hpp"
#include "nbsums/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace nbsums::nb {

struct BhkVerification {
    int64_t h = 0, k = 0;
    double quadrature = 0.0;  // truncated integral + diagonal tail correction
    double formula = 0.0;     // closed form from cotsums::gram_b
    double diff = 0.0;
    double tail_envelope = 0.0;
    bool pass = false;
};

inline BhkVerification verify_bhk_integral(int64_t h, int64_t k,
                                           const quad::ZetaGrid& grid,
                                           double tol = 1e-2) {
    if (h < 1 || k < 1) throw domain_error("verify_bhk_integral: h,k >= 1");
    BhkVerification r;
    r.h = h;
    r.k = k;
    const double pi = std::acos(-1.0);
    const double logr = std::log(static_cast<double>(h) / static_cast<double>(k));
    const double raw = grid.integrate([&](double t, const std::complex<double>& z) {
        return std::norm(z) * std::cos(t * logr) / (0.25 + t * t);
    });
    // full line = 2 * [0,T] by conjugate symmetry
    r.quadrature = raw / (pi * std::sqrt(static_cast<double>(h) * k));
    if (h == k) {
        r.quadrature += quad::zeta_mean_tail(grid.T) / static_cast<double>(h);
        r.tail_envelope = 0.5 * quad::zeta_mean_tail(grid.T) / h;
    } else {
        // oscillatory tail: integrate the mean model against cos(t log r)/t^2
        r.tail_envelope =
            2.0 * quad::zeta_mean_tail(grid.T) /
            (std::abs(logr) * grid.T * std::sqrt(static_cast<double>(h) * k));
        r.tail_envelope = std::min(r.tail_envelope, quad::zeta_mean_tail(grid.T));
    }
    r.formula = sums::gram_b(h, k);
    r.diff = r.quadrature - r.formula;
    r.pass = std::abs(r.diff) <= tol + r.tail_envelope;
    return r;
}

// ---------------------------------------------------------------------------
// V_N coefficients and linear terms
// ---------------------------------------------------------------------------

inline std::vector<double> vn_coefficients(int64_t N, const arith::MoebiusTable& mt) {
    if (N < 2) throw domain_error("vn_coefficients: N >= 2 required");
    if (N > mt.limit) throw domain_error("vn_coefficients: sieve too small");
    std::vector<double> a(N + 1, 0.0);  // a[1..N]
    const double logN = std::log(static_cast<double>(N));
    for (int64_t n = 1; n <= N; ++n)
        a[n] = (1.0 - std::log(static_cast<double>(n)) / logN) * mt.mu[n];
    return a;
}

struct LinearTerms {
    std::vector<double> ell;      // ell[1..N]
    std::vector<double> err_est;  // tail envelope per n
    double T = 0.0;
};

inline LinearTerms linear_terms(int64_t N, const quad::ZetaGrid& grid,
                                int threads = 0) {
    if (N < 1 || N > 512) throw domain_error("linear_terms: need 1 <= N <= 512");
    LinearTerms lt;
    lt.T = grid.T;
    lt.ell.assign(N + 1, 0.0);
    lt.err_est.assign(N + 1, 0.0);
    const double pi = std::acos(-1.0);
    parallel_for(
        N,
        [&](int64_t i) {
            const int64_t n = i + 1;
            const double lnn = std::log(static_cast<double>(n));
            const double amp = 1.0 / std::sqrt(static_cast<double>(n));
            const double raw =
                grid.integrate([&](double t, const std::complex<double>& z) {
                    // Re[zeta * n^{-1/2 - it}]
                    const double c = std::cos(t * lnn), s = std::sin(t * lnn);
                    return amp * (z.real() * c + z.imag() * s) / (0.25 + t * t);
                });
            lt.ell[n] = raw / pi;  // (1/2pi) * 2 (even integrand)
            if (n == 1) {
                // the m=n=1 term of zeta n^{-s} has frequency zero
                lt.ell[n] += quad::weight_tail_mass(grid.T);
                lt.err_est[n] = 2.0 * std::sqrt(grid.T) /
                                (pi * grid.T * grid.T * kLog2);
            } else {
                lt.err_est[n] = amp * (1.0 / (grid.T * lnn) +
                                       2.0 * std::sqrt(grid.T) / (grid.T * grid.T)) /
                                pi;
            }
        },
        threads);
    return lt;
}

// ---------------------------------------------------------------------------
// Gram matrix, the distance d_N^2 by both routes, and its minimizer
// ---------------------------------------------------------------------------

struct GramMatrix {
    Eigen::MatrixXd B;  // b_{h,k}, 1-based entries stored at (h-1, k-1)

    static GramMatrix build(int64_t N, int threads = 0) {
        GramMatrix gm;
        gm.B.resize(N, N);
        sums::VCache vc;
        // warm the V memo in parallel over denominators, then fill
        parallel_for(
            N,
            [&](int64_t i) {
                const int64_t k = i + 1;
                for (int64_t h = 1; h <= k; ++h) vc.gram_b(h, k);
            },
            threads);
        for (int64_t h = 1; h <= N; ++h)
            for (int64_t k = h; k <= N; ++k) {
                const double v = vc.gram_b(h, k);
                gm.B(h - 1, k - 1) = v;
                gm.B(k - 1, h - 1) = v;
            }
        return gm;
    }
};

struct Dn2Result {
    double value = 0.0;
    double err_est = 0.0;
};

// gram route: d^2 = 1 - 2 a.ell + a^T B a  (real coefficients)
inline Dn2Result dn_squared_gram(const std::vector<double>& a,
                                 const LinearTerms& lt, const GramMatrix& gm) {
    const int64_t N = static_cast<int64_t>(a.size()) - 1;
    long double lin = 0.0L;
    double err = 0.0;
    for (int64_t n = 1; n <= N; ++n) {
        lin += static_cast<long double>(a[n]) * lt.ell[n];
        err += 2.0 * std::abs(a[n]) * lt.err_est[n];
    }
    long double quad_form = 0.0L;
    for (int64_t h = 1; h <= N; ++h) {
        long double row = 0.0L;
        for (int64_t k = 1; k <= N; ++k)
            row += static_cast<long double>(a[k]) * gm.B(h - 1, k - 1);
        quad_form += a[h] * row;
    }
    return {static_cast<double>(1.0L - 2.0L * lin + quad_form), err};
}

// direct route: (1/2pi) int |1 - zeta D_N|^2 dt/(1/4+t^2), D_N from a[]
inline Dn2Result dn_squared_direct(const std::vector<double>& a,
                                   const quad::ZetaGrid& grid) {
    const int64_t N = static_cast<int64_t>(a.size()) - 1;
    if (N > 64) throw domain_error("dn_squared_direct: N too large for direct mode");
    std::vector<double> lnn(N + 1, 0.0), amp(N + 1, 0.0);
    for (int64_t n = 1; n <= N; ++n) {
        lnn[n] = std::log(static_cast<double>(n));
        amp[n] = a[n] / std::sqrt(static_cast<double>(n));
    }
    const double pi = std::acos(-1.0);
    const double raw = grid.integrate([&](double t, const std::complex<double>& z) {
        std::complex<double> D(0.0, 0.0);
        for (int64_t n = 1; n <= N; ++n) {
            if (a[n] == 0.0) continue;
            D += std::complex<double>(amp[n] * std::cos(t * lnn[n]),
                                      -amp[n] * std::sin(t * lnn[n]));
        }
        return std::norm(1.0 - z * D) / (0.25 + t * t);
    });
    Dn2Result r;
    r.value = raw / pi;
    // zero-frequency tail pieces: |1|^2, -2 Re(a_1 zeta leading term), and
    // the diagonal of |zeta D|^2 under the mean-value model
    double diag = 0.0;
    for (int64_t n = 1; n <= N; ++n) diag += a[n] * a[n] / static_cast<double>(n);
    const double corr = (1.0 - 2.0 * a[1]) * quad::weight_tail_mass(grid.T) +
                        diag * quad::zeta_mean_tail(grid.T);
    r.value += corr;
    r.err_est = 0.5 * diag * quad::zeta_mean_tail(grid.T) +
                2.0 * std::abs(a[1]) * 2.0 * std::sqrt(grid.T) /
                    (pi * grid.T * grid.T * kLog2);
    return r;
}

struct GramSolve {
    std::vector<double> a;  // optimal coefficients, a[1..N]
    double dn2 = 0.0;
    double min_pivot = 0.0;
    bool ridged = false;
};

// minimize 1 - 2 a.ell + a^T B a: solve B a = ell (LDLT, symmetric pivoting);
// near-singular systems fall back to a 1e-12 ridge and are flagged
inline GramSolve gram_minimize(const GramMatrix& gm, const LinearTerms& lt,
                               int64_t N) {
    Eigen::MatrixXd B = gm.B.topLeftCorner(N, N);
    Eigen::VectorXd ell(N);
    for (int64_t n = 1; n <= N; ++n) ell(n - 1) = lt.ell[n];

    Eigen::LDLT<Eigen::MatrixXd> ldlt(B);
    GramSolve gs;
    gs.min_pivot = ldlt.vectorD().minCoeff();
    Eigen::VectorXd x;
    if (ldlt.info() == Eigen::Success && gs.min_pivot > -1e-9) {
        x = ldlt.solve(ell);
    } else {
        gs.ridged = true;
        Eigen::MatrixXd Br = B + 1e-12 * Eigen::MatrixXd::Identity(N, N);
        x = Eigen::LDLT<Eigen::MatrixXd>(Br).solve(ell);
    }
    gs.a.assign(N + 1, 0.0);
    for (int64_t n = 1; n <= N; ++n) gs.a[n] = x(n - 1);
    gs.dn2 = 1.0 - ell.dot(x);  // 1 - 2 a.ell + a.B a = 1 - a.ell at the optimum
    return gs;
}

}  // namespace nbsums::nb
