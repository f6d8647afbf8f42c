#pragma once

// The identity/property suite behind `nbsums verify`: every cross-check the
// library can run against itself, sized down when quick = true (target: well
// under two minutes on a laptop) and at full strength otherwise.

#include "nbsums/constants.hpp"
#include "nbsums/gfunc.hpp"
#include "nbsums/nb.hpp"
#include "nbsums/stats_mc.hpp"
#include "nbsums/theorem.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace nbsums::vrf {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline std::vector<CheckResult> run_verification(bool quick, uint64_t seed = 0xC0FFEE) {
    std::vector<CheckResult> out;
    const auto add = [&out](const std::string& name,
                            const std::function<bool(std::string&)>& fn) {
        CheckResult r;
        r.name = name;
        try {
            r.pass = fn(r.detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(r));
    };

    static gfn::GEvaluator ge;
    const int64_t kmax = quick ? 60 : 200;

    add("vaughan-identity", [&](std::string& d) {
        const int64_t N = quick ? 20000 : 100000;
        const auto mt = arith::MoebiusTable::build(N);
        const std::vector<double> ws =
            quick ? std::vector<double>{2.0, 50.0}
                  : std::vector<double>{2.0, 10.0, 50.0, 316.0};
        for (double w : ws) {
            const auto vd = arith::vaughan_decompose(mt, w);
            for (int64_t n = 1; n <= N; ++n)
                if (vd.C1(n) + vd.C2(n, mt) + vd.C3(n) != mt.mu[n]) {
                    d = "n=" + std::to_string(n);
                    return false;
                }
        }
        d = "exact";
        return true;
    });

    add("two-route-g-agreement", [&](std::string& d) {
        double worst = 0.0;
        for (int64_t k = 2; k <= kmax; ++k)
            for (int64_t h = 1; h < k; ++h) {
                if (std::gcd(h, k) != 1) continue;
                worst = std::max(worst,
                                 std::abs(ge.g_wilton(h, k) - ge.g_rational(h, k)));
            }
        d = "max diff " + fmt17(worst) + ", kappa " + fmt17(ge.kappa());
        return worst <= 1e-8;
    });

    add("vasyunin-c0-orientation", [&](std::string& d) {
        int sign = 0;
        double worst = 0.0;
        for (int64_t k = 2; k <= kmax; ++k)
            for (int64_t h = 1; h < k; ++h) {
                if (std::gcd(h, k) != 1) continue;
                const double v = sums::vasyunin_V(h, k);
                const double c = sums::cotangent_c0(arith::mod_inverse(h, k), k);
                if (std::abs(c) < 1e-13 && std::abs(v) < 1e-13) continue;
                const int s_here = (v * c > 0) ? +1 : -1;
                if (sign == 0) sign = s_here;
                if (s_here != sign) {
                    d = "flips at h/k = " + std::to_string(h) + "/" + std::to_string(k);
                    return false;
                }
                worst = std::max(worst, std::abs(v - sign * c));
            }
        d = "uniform sign " + std::to_string(sign) + ", max dev " + fmt17(worst);
        return worst <= 1e-9;
    });

    add("g-antisymmetry", [&](std::string& d) {
        const int64_t cap = quick ? 40 : 100;
        double worst = 0.0;
        for (int64_t k = 2; k <= cap; ++k)
            for (int64_t h = 1; h < k; ++h) {
                if (std::gcd(h, k) != 1) continue;
                worst = std::max(worst,
                                 std::abs(ge.g_wilton(h, k) + ge.g_wilton(k - h, k)));
            }
        d = "max |g(x)+g(1-x)| = " + fmt17(worst);
        return worst <= 1e-8;
    });

    add("wilton-functional-equation", [&](std::string& d) {
        std::mt19937_64 rng(stream_seed(seed, 1));
        std::uniform_int_distribution<int64_t> den(3, 1'000'000);
        double worst = 0.0;
        const int trials = quick ? 200 : 1000;
        for (int i = 0; i < trials; ++i) {
            const int64_t q = den(rng);
            std::uniform_int_distribution<int64_t> num(1, q - 1);
            const Rational x(num(rng), q);
            const cf::CFExpansion ex = cf::cf_expand(x);
            if (ex.depth() < 2) continue;
            const Rational ax = cf::gauss_map(x);
            const double resid = ge.wilton_W(ex) -
                                 (log_rational(1 / x) -
                                  to_double(x) * ge.wilton_W(cf::cf_expand(ax)));
            worst = std::max(worst, std::abs(resid));
        }
        d = "max residual " + fmt17(worst);
        return worst <= 1e-10;
    });

    add("smooth-singular-truncation", [&](std::string& d) {
        std::mt19937_64 rng(stream_seed(seed, 2));
        std::uniform_int_distribution<int64_t> den(100, 2'000'000);
        int n = 0;
        const int want = quick ? 50 : 200;
        while (n < want) {
            const int64_t q = den(rng);
            std::uniform_int_distribution<int64_t> num(1, q - 1);
            const int64_t p = num(rng);
            if (std::gcd(p, q) != 1) continue;
            const cf::CFExpansion e = cf::cf_expand(p, q);
            if (e.depth() < 3) continue;
            const auto dres = ge.g_split(p, q, e.depth() - 2);  // throws on drift
            if (std::abs(dres.g_total - (dres.g_sm + dres.g_sing)) > 1e-15) {
                d = "g != g_sm + g_sing";
                return false;
            }
            if (std::abs(dres.g_sing) > ge.g_sing_bound(e, e.depth() - 2) + 1e-12) {
                d = "singular part above its tail bound";
                return false;
            }
            ++n;
        }
        d = std::to_string(n) + " random rationals";
        return true;
    });

    add("alpha-pair-bound-exact", [&](std::string& d) {
        std::mt19937_64 rng(stream_seed(seed, 3));
        const int trials = quick ? 300 : 3000;
        for (int i = 0; i < trials; ++i) {
            const Rational x = mc::sample_exact_rational(rng, 128, 256);
            const cf::CFExpansion e = cf::cf_expand(x, 200);
            for (int s = 0; s + 1 < e.depth(); ++s)
                if (e.alpha(s) * e.alpha(s + 1) > Rational(1, 2)) {
                    d = "violated";
                    return false;
                }
        }
        d = std::to_string(trials) + " exact samples";
        return true;
    });

    add("cell-partition", [&](std::string& d) {
        std::mt19937_64 rng(stream_seed(seed, 4));
        std::uniform_int_distribution<int64_t> den(1000, 1'000'000);
        const int want = quick ? 1000 : 5000;
        int n = 0;
        while (n < want) {
            const int64_t q = den(rng);
            std::uniform_int_distribution<int64_t> num(1, q - 1);
            const Rational x(num(rng), q);
            const cf::CFExpansion e = cf::cf_expand(x);
            if (e.depth() < 5) continue;
            std::vector<BigInt> prefix(e.quotients.begin(), e.quotients.begin() + 3);
            if (!cf::cell_of(prefix).contains(x)) {
                d = "containing cell has wrong quotients";
                return false;
            }
            ++n;
        }
        d = std::to_string(n) + " points";
        return true;
    });

    add("cell-bounds-exhaustive", [&](std::string& d) {
        const auto r2 = mc::exhaustive_cell_check(2, 30);
        bool ok = r2.measure_bound_failures == 0 && r2.logq_bound_failures == 0 &&
                  r2.total_length <= Rational(1);
        int64_t cells = r2.n_cells;
        if (!quick) {
            const auto r3 = mc::exhaustive_cell_check(3, 21);
            ok = ok && r3.measure_bound_failures == 0 &&
                 r3.logq_bound_failures == 0 && r3.total_length <= Rational(1);
            cells += r3.n_cells;
        }
        d = std::to_string(cells) + " cells, all bounds exact";
        return ok;
    });

    add("gauss-measure-invariance", [&](std::string& d) {
        mc::MCConfig cfg;
        cfg.seed = seed;
        cfg.samples = quick ? 100000 : 1'000'000;
        const auto r = mc::mc_invariance(0.0, 0.5, cfg);
        const double dev = std::abs(r.preimage_est - r.target) / r.preimage_se;
        d = "preimage dev " + fmt17(dev) + " sigma; image est " + fmt17(r.image_est) +
            " vs measure " + fmt17(r.target) + " (image form fails as expected)";
        return dev <= 3.0;
    });

    add("transfer-contraction", [&](std::string& d) {
        mc::MCConfig cfg;
        cfg.seed = seed + 1;
        cfg.samples = quick ? 100000 : 1'000'000;
        const int smax = quick ? 5 : 10;
        for (int s = 1; s <= smax; ++s) {
            const auto r = mc::mc_contraction(s, 2.0, cfg);
            const double rel = r.ratio_se / std::max(r.ratio, 1e-300);
            if (r.ratio > r.bound * (1.0 + 5.0 * rel)) {
                d = "failed at s=" + std::to_string(s);
                return false;
            }
        }
        d = "ratios below g^{(s-1)p} for s <= " + std::to_string(smax);
        return true;
    });

    add("qs-tail-bound", [&](std::string& d) {
        mc::MCConfig cfg;
        cfg.seed = seed + 2;
        cfg.samples = quick ? 100000 : 1'000'000;
        const std::vector<int> svals =
            quick ? std::vector<int>{10} : std::vector<int>{10, 15, 20, 25};
        const auto rep = mc::mc_tail_qs(2.0, svals, cfg);
        for (const auto& row : rep.rows)
            if (row.empirical > row.bound + 3.0 * row.se) {
                d = "failed at s=" + std::to_string(row.s);
                return false;
            }
        d = "bounds hold (C2 = 0 at C1 = 2, bound vacuous; empirical tails small)";
        return true;
    });

    add("constants-residuals", [&](std::string& d) {
        const auto tc = consts::solve_theorem_constants(1e-12);
        const auto sc = consts::solve_section_constants(1e-12);
        const bool ok = tc.equation_root.res_C <= 1e-12 &&
                        tc.equation_root.res_v0 <= 1e-12 &&
                        tc.equation_root.z0 > 0 && sc.res_C4 <= 1e-12;
        d = "z0 = " + fmt17(tc.equation_root.z0);
        return ok;
    });

    add("gram-symmetry", [&](std::string& d) {
        const int64_t cap = quick ? 30 : 50;
        sums::VCache vc;
        double worst = 0.0;
        for (int64_t h = 1; h <= cap; ++h)
            for (int64_t k = 1; k <= cap; ++k)
                worst = std::max(worst, std::abs(vc.gram_b(h, k) - vc.gram_b(k, h)));
        d = "max asymmetry " + fmt17(worst);
        return worst <= 1e-12;
    });

    add("zeta-reference-values", [&](std::string& d) {
        const auto z0 = zt::zeta_half(0.0).z;
        const auto z17 = zt::zeta_half(17.5).z;
        const bool ok =
            std::abs(z0.real() + 1.460354508809586812889499) < 1e-9 &&
            std::abs(z17.real() - 2.265200469919341046118809) < 1e-9 &&
            std::abs(z17.imag() - 0.4090974363537555273126792) < 1e-9 &&
            zt::hardy_Z(14.1) * zt::hardy_Z(14.2) < 0;
        d = "zeta(1/2), zeta(1/2+17.5i), first zero bracket";
        return ok;
    });

    add("gram-vs-quadrature", [&](std::string& d) {
        const double T = quick ? 600.0 : 2000.0;
        const quad::ZetaGrid grid = quad::ZetaGrid::build(T, 0.5);
        const double tol = quick ? 5e-3 : 1e-2;
        const int64_t cap = quick ? 3 : 6;
        double worst = 0.0;
        for (int64_t h = 1; h <= cap; ++h)
            for (int64_t k = 1; k <= cap; ++k) {
                const auto v = nb::verify_bhk_integral(h, k, grid, tol);
                worst = std::max(worst, std::abs(v.diff));
                if (!v.pass) {
                    d = "failed at (" + std::to_string(h) + "," + std::to_string(k) + ")";
                    return false;
                }
            }
        d = "max |diff| " + fmt17(worst) + " at T = " + fmt17(T);
        return true;
    });

    add("dn2-route-agreement", [&](std::string& d) {
        const double T = quick ? 600.0 : 2000.0;
        const quad::ZetaGrid grid = quad::ZetaGrid::build(T, 0.5);
        const auto mt = arith::MoebiusTable::build(16);
        const int64_t N = quick ? 2 : 5;
        const auto a = nb::vn_coefficients(std::max<int64_t>(N, 2), mt);
        std::vector<double> aa(N + 1, 0.0);
        for (int64_t n = 1; n <= N; ++n) aa[n] = a[n];
        const nb::GramMatrix gm = nb::GramMatrix::build(N);
        const nb::LinearTerms lt = nb::linear_terms(N, grid);
        const auto dg = nb::dn_squared_gram(aa, lt, gm);
        const auto dd = nb::dn_squared_direct(aa, grid);
        d = "gram " + fmt17(dg.value) + " direct " + fmt17(dd.value);
        return std::abs(dg.value - dd.value) <= dg.err_est + dd.err_est + 5e-4;
    });

    add("theorem-split-identity", [&](std::string& d) {
        const auto mt = arith::MoebiusTable::build(quick ? 2 * 30 * 30 : 2 * 50 * 50);
        for (int64_t k : (quick ? std::vector<int64_t>{10, 30}
                                : std::vector<int64_t>{10, 30, 50})) {
            const auto r = thm::theorem_sum(k, 2.0, 0.05, 0.1715121345821375,
                                            0.0712951902507484, mt, ge);
            const double scale = std::pow(static_cast<double>(k), 2.0);
            if (std::abs(r.S - (r.sigma1 + r.sigma2 + r.sigma3)) > 1e-9 * scale ||
                std::abs(r.sigma1 - (r.sigma11 + r.sigma12)) > 1e-9 * scale) {
                d = "failed at k=" + std::to_string(k);
                return false;
            }
        }
        d = "S = S1+S2+S3 and S1 = S11+S12";
        return true;
    });

    return out;
}

}  // namespace nbsums::vrf
