#pragma once

// Composite Gauss-Legendre quadrature on [0, T] with zeta cached per node.
// Panels are built once for the most oscillatory integrand the run needs
// (frequencies up to log N_max + the zeta phase drift stay far inside what a
// 16-point rule resolves on width-0.5 panels) and every weighted integral
// reuses the same nodes, so zeta is evaluated exactly once per node.
// Panel-width and T refinement are exercised by the test suite instead of
// per-integral adaptivity; the two-level acceptance comparison is applied at
// build time on the reference integrand |zeta|^2/(1/4+t^2).

#include "nbsums/common.hpp"
#include "nbsums/zeta.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace nbsums::quad {

// 16-point Gauss-Legendre abscissas/weights on [-1, 1]
inline constexpr double kGL16X[8] = {
    0.09501250983763744018531933542496, 0.28160355077925891323046050146050,
    0.45801677765722738634241944298358, 0.61787624440264374844667176404879,
    0.75540440835500303389510119484744, 0.86563120238783174388046789771239,
    0.94457502307323257607798841553461, 0.98940093499164993259615417345033};
inline constexpr double kGL16W[8] = {
    0.18945061045506849628539672320828, 0.18260341504492358886676366796922,
    0.16915651939500253818931207903036, 0.14959598881657673208150173054748,
    0.12462897125553387205247628219202, 0.09515851168249278480992510760225,
    0.06225352393864789286284383699438, 0.02715245941175409485178057245602};

struct ZetaGrid {
    std::vector<double> t;                   // nodes
    std::vector<double> w;                   // weights (plain dt weights)
    std::vector<std::complex<double>> zeta;  // zeta(1/2 + i t) per node
    double T = 0.0;
    double panel_width = 0.0;
    double max_zeta_err = 0.0;
    double build_check = 0.0;  // two-level comparison on the reference integrand

    static ZetaGrid build(double T, double panel_width = 0.5, int threads = 0) {
        if (T <= 0) throw domain_error("ZetaGrid: T > 0 required");
        ZetaGrid g;
        g.T = T;
        const int64_t panels = static_cast<int64_t>(std::ceil(T / panel_width));
        g.panel_width = T / static_cast<double>(panels);
        g.t.resize(panels * 16);
        g.w.resize(panels * 16);
        for (int64_t p = 0; p < panels; ++p) {
            const double a = g.panel_width * static_cast<double>(p);
            const double c = a + 0.5 * g.panel_width;
            const double h = 0.5 * g.panel_width;
            for (int j = 0; j < 8; ++j) {
                g.t[p * 16 + 2 * j] = c - h * kGL16X[j];
                g.t[p * 16 + 2 * j + 1] = c + h * kGL16X[j];
                g.w[p * 16 + 2 * j] = h * kGL16W[j];
                g.w[p * 16 + 2 * j + 1] = h * kGL16W[j];
            }
        }
        g.zeta.resize(g.t.size());
        std::vector<double> errs(g.t.size(), 0.0);
        parallel_for(
            static_cast<int64_t>(g.t.size()),
            [&](int64_t i) {
                const zt::CriticalLineValue v = zt::zeta_half(g.t[i]);
                g.zeta[i] = v.z;
                errs[i] = v.err_est;
            },
            threads);
        for (double e : errs) g.max_zeta_err = std::max(g.max_zeta_err, e);

        // two-level acceptance on the first panels of the reference integrand:
        // GL16 against GL16 on split halves, for |zeta|^2/(1/4+t^2)
        const auto ref = [](double t) {
            const auto z = zt::zeta_half(t).z;
            return std::norm(z) / (0.25 + t * t);
        };
        double coarse = 0.0, fine = 0.0;
        const int check_panels = static_cast<int>(std::min<int64_t>(panels, 8));
        for (int p = 0; p < check_panels; ++p) {
            const double a = g.panel_width * p;
            coarse += gl16(ref, a, a + g.panel_width);
            fine += gl16(ref, a, a + 0.5 * g.panel_width);
            fine += gl16(ref, a + 0.5 * g.panel_width, a + g.panel_width);
        }
        g.build_check = std::abs(coarse - fine);
        return g;
    }

    template <typename F>
    static double gl16(const F& f, double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double acc = 0.0;
        for (int j = 0; j < 8; ++j)
            acc += kGL16W[j] * (f(c - h * kGL16X[j]) + f(c + h * kGL16X[j]));
        return acc * h;
    }

    // integrate f(t_i, zeta_i) dt over [0, T] using the cached nodes
    template <typename F>
    double integrate(const F& f) const {
        long double acc = 0.0L;
        for (size_t i = 0; i < t.size(); ++i) acc += w[i] * f(t[i], zeta[i]);
        return static_cast<double>(acc);
    }
};

// (2/pi) (pi/2 - atan(2T)): the mass of the weight dt/((1/4+t^2) pi) beyond
// |t| > T; multiplies the zero-frequency part of tail corrections
inline double weight_tail_mass(double T) {
    const double pi = std::acos(-1.0);
    return (2.0 / pi) * (pi / 2.0 - std::atan(2.0 * T));
}

// \int_T^inf (log(t/2pi) + 2 gamma) / t^2 dt / pi: mean-value model of the
// |zeta|^2 tail against the weight (the 1/4 in the denominator is dropped,
// making this a mild over-estimate, which is the safe direction)
inline double zeta_mean_tail(double T) {
    const double pi = std::acos(-1.0);
    return (std::log(T / (2.0 * pi)) + 2.0 * kEulerGamma + 1.0) / (pi * T);
}

}  // namespace nbsums::quad
