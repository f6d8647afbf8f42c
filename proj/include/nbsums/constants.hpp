#pragma once

// Numerical solution of the transcendental equations behind the explicit
// exponents:
//
//   C:   2C - log C - 1 - 2 log 2 = (1/2) log 2       (strictly increasing on C > 1/2)
//   v0:  v0 (1 - (1 + 2 log2 (C + log2/2)^{-1})^{-1} + 2 + (4/log2) C) = 2
//   z0 = 2 - (2 + (4/log2) C) v0
//
//   C4:  (1/4)C4 - log C4 - 1 + log 2 = (1/2) log 2   (root on [4, 50])
//   C5 = (1/2)C4 - log C4 - 1 + log 2
//   E(v) = v (1 - (1 + 2 log2 (C4 + log2/2)^{-1})^{-1})
//   H(u) = 1/2 - (1/2 + C4/log2) u
//
// The equation root for C lies slightly below (sqrt5+1)/2, so the side
// condition C >= phi and the equation cannot both hold; both readings are
// solved and carried as named scenarios.  Bisection with explicit brackets,
// 200 iterations; root uniqueness is checked by a sign-change scan.

#include "nbsums/common.hpp"

#include <cmath>
#include <functional>

namespace nbsums::consts {

inline constexpr double kPhi = 1.6180339887498948482045868343656381;

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int sign_changes = 0;  // on a 10^4-point scan of the bracket
};

inline RootResult bisect(const std::function<double(double)>& f, double lo,
                         double hi, int scan_points = 10000) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 1};
    if (fhi == 0.0) return {hi, 0.0, 1};
    if ((flo > 0) == (fhi > 0))
        throw accuracy_error("bisect: no sign change in bracket");
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
            a = b = m;
            break;
        }
        if ((fm > 0) == (flo > 0)) {
            a = m;
            flo = fm;
        } else {
            b = m;
        }
    }
    RootResult r;
    r.root = 0.5 * (a + b);
    r.residual = std::abs(f(r.root));
    double prev = f(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / scan_points;
        const double fx = f(x);
        if ((prev < 0 && fx >= 0) || (prev > 0 && fx <= 0)) ++r.sign_changes;
        prev = fx;
    }
    return r;
}

struct ConstantScenario {
    double C = 0.0;
    double v0 = 0.0;
    double z0 = 0.0;
    double res_C = 0.0;   // residual of the C equation at this C
    double res_v0 = 0.0;  // residual of the v0 equation
};

struct TheoremConstants {
    ConstantScenario equation_root;  // C from the equation (~1.6021, below phi)
    ConstantScenario phi_clamped;    // C clamped to (sqrt5+1)/2
    bool root_satisfies_phi_bound = false;
    int c_sign_changes = 0;
};

inline double c_equation(double c) {
    return 2.0 * c - std::log(c) - 1.0 - 2.0 * kLog2 - 0.5 * kLog2;
}

inline ConstantScenario compose_scenario(double C) {
    ConstantScenario s;
    s.C = C;
    const double coef = 1.0 - 1.0 / (1.0 + 2.0 * kLog2 / (C + kLog2 / 2.0)) +
                        2.0 + 4.0 / kLog2 * C;
    s.v0 = 2.0 / coef;
    s.z0 = 2.0 - (2.0 + 4.0 / kLog2 * C) * s.v0;
    s.res_C = std::abs(c_equation(C));
    s.res_v0 = std::abs(s.v0 * coef - 2.0);
    return s;
}

inline TheoremConstants solve_theorem_constants(double tol = 1e-12) {
    TheoremConstants tc;
    RootResult r = bisect(c_equation, 1.0, 3.0);
    if (r.residual > tol)
        throw accuracy_error("solve_theorem_constants: C residual above tol");
    tc.equation_root = compose_scenario(r.root);
    tc.phi_clamped = compose_scenario(kPhi);
    tc.phi_clamped.res_C = 0.0;  // defined by the clamp, not the equation
    tc.root_satisfies_phi_bound = (r.root >= kPhi);
    tc.c_sign_changes = r.sign_changes;
    return tc;
}

struct SectionConstants {
    double C4 = 0.0;
    double C5 = 0.0;
    double res_C4 = 0.0;
    double E_slope = 0.0;  // E(v) = E_slope * v
    double H_slope = 0.0;  // H(u) = 1/2 - H_slope * u
    int c4_sign_changes = 0;

    double E(double v) const { return E_slope * v; }
    double H(double u) const { return 0.5 - H_slope * u; }
};

inline double c4_equation(double c) {
    return 0.25 * c - std::log(c) - 1.0 + kLog2 - 0.5 * kLog2;
}

inline SectionConstants solve_section_constants(double tol = 1e-12) {
    SectionConstants sc;
    RootResult r = bisect(c4_equation, 4.0, 50.0);
    if (r.residual > tol)
        throw accuracy_error("solve_section_constants: C4 residual above tol");
    sc.C4 = r.root;
    sc.res_C4 = r.residual;
    sc.C5 = 0.5 * sc.C4 - std::log(sc.C4) - 1.0 + kLog2;
    sc.E_slope = 1.0 - 1.0 / (1.0 + 2.0 * kLog2 / (sc.C4 + kLog2 / 2.0));
    sc.H_slope = 0.5 + sc.C4 / kLog2;
    sc.c4_sign_changes = r.sign_changes;
    return sc;
}

// E(v0) - H(u*) with u* = 4 v0 + 4 delta0; reported, never asserted (the
// two sides use C and C4 in structurally identical expressions and do not
// meet numerically)
inline double consistency_probe(const TheoremConstants& tc,
                                const SectionConstants& sc, double delta0) {
    const double v0 = tc.equation_root.v0;
    const double ustar = 4.0 * v0 + 4.0 * delta0;
    return sc.E(v0) - sc.H(ustar);
}

}  // namespace nbsums::consts
