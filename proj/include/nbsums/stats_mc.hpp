#pragma once

// Monte-Carlo and exhaustive experiments for the measure-theoretic lemmas:
// Gauss-measure invariance (preimage form), L^p contraction of the operator
// Tf(x) = x f(alpha(x)), the q_s tail bound, and exact per-cell checks.
//
// Sampling: the Gauss measure has distribution function log2(1+x), so
// x = 2^u - 1 with u uniform is an exact rejection-free sampler.  Exact
// rational samples draw a random 128-256 bit denominator and a uniform
// numerator below it.  Every batch derives its RNG stream from (seed, batch
// index), so results are bit-identical regardless of thread count.

#include "nbsums/common.hpp"
#include "nbsums/contfrac.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace nbsums::mc {

struct MCConfig {
    uint64_t seed = 0x5eed;
    int64_t samples = 1'000'000;
    int den_bits_min = 128;
    int den_bits_max = 256;
    int threads = 0;
};

inline constexpr int64_t kBatch = 1 << 16;

inline double sample_gauss_measure(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    return std::exp2(uni(rng)) - 1.0;
}

inline double gauss_map_d(double x) { return 1.0 / x - std::floor(1.0 / x); }

inline BigInt random_bigint_bits(std::mt19937_64& rng, int bits) {
    BigInt v = 0;
    int produced = 0;
    while (produced < bits) {
        v <<= 64;
        v |= BigInt(rng());
        produced += 64;
    }
    v >>= (produced - bits);
    boost::multiprecision::bit_set(v, bits - 1);  // enforce the bit length
    return v;
}

inline Rational sample_exact_rational(std::mt19937_64& rng, int bits_min,
                                      int bits_max) {
    std::uniform_int_distribution<int> bits_dist(bits_min, bits_max);
    const int bits = bits_dist(rng);
    const BigInt q = random_bigint_bits(rng, bits);
    // uniform numerator in [1, q-1] by rejection on the bit window
    for (;;) {
        BigInt p = random_bigint_bits(rng, bits);
        boost::multiprecision::bit_unset(p, bits - 1);
        if (p >= 1 && p < q) return Rational(p, q);
    }
}

// ---------------------------------------------------------------------------
// Gauss-measure invariance (preimage form), with the image form reported
// ---------------------------------------------------------------------------

struct InvarianceReport {
    double a = 0, b = 0;
    double target = 0;         // m((a,b)) closed form
    double preimage_est = 0;   // MC estimate of m(alpha^{-1}(a,b))
    double preimage_se = 0;
    double image_est = 0;      // MC estimate of m(alpha(a,b))
    double image_se = 0;
    int64_t samples = 0;
};

inline bool in_alpha_image(double y, double a, double b) {
    // y in alpha((a,b)) iff some branch 1/(n+y) lies in (a,b), n >= 1
    if (y <= 0.0 || y >= 1.0) return false;
    const double n_lo = 1.0 / b - y, n_hi = 1.0 / a - y;
    const int64_t n_first = static_cast<int64_t>(std::floor(n_lo)) + 1;
    return static_cast<double>(std::max<int64_t>(n_first, 1)) < n_hi;
}

inline InvarianceReport mc_invariance(double a, double b, const MCConfig& cfg) {
    if (!(a < b) || a < 0.0 || b > 1.0)
        throw domain_error("mc_invariance: need 0 <= a < b <= 1");
    InvarianceReport rep;
    rep.a = a;
    rep.b = b;
    rep.samples = cfg.samples;
    rep.target = cf::gauss_measure(a, b);

    const int64_t n_batches = (cfg.samples + kBatch - 1) / kBatch;
    std::vector<int64_t> pre_hits(n_batches, 0), img_hits(n_batches, 0),
        counts(n_batches, 0);
    parallel_for(
        n_batches,
        [&](int64_t bi) {
            std::mt19937_64 rng(stream_seed(cfg.seed, bi));
            const int64_t n =
                std::min<int64_t>(kBatch, cfg.samples - bi * kBatch);
            int64_t ph = 0, ih = 0;
            for (int64_t i = 0; i < n; ++i) {
                const double x = sample_gauss_measure(rng);
                const double y = gauss_map_d(x);
                if (y > a && y < b) ++ph;             // x in alpha^{-1}((a,b))
                if (in_alpha_image(x, a, b)) ++ih;    // x in alpha((a,b))
            }
            pre_hits[bi] = ph;
            img_hits[bi] = ih;
            counts[bi] = n;
        },
        cfg.threads);

    int64_t pre = 0, img = 0, tot = 0;
    for (int64_t bi = 0; bi < n_batches; ++bi) {
        pre += pre_hits[bi];
        img += img_hits[bi];
        tot += counts[bi];
    }
    rep.preimage_est = static_cast<double>(pre) / tot;
    rep.image_est = static_cast<double>(img) / tot;
    rep.preimage_se =
        std::sqrt(rep.preimage_est * (1.0 - rep.preimage_est) / tot);
    rep.image_se = std::sqrt(rep.image_est * (1.0 - rep.image_est) / tot);
    return rep;
}

// ---------------------------------------------------------------------------
// contraction of T^s on the test function f = l = log(1/x)
// ---------------------------------------------------------------------------

struct ContractionReport {
    int s = 0;
    double p = 0;
    double lhs = 0, lhs_se = 0;  // int |T^s f|^p dm
    double rhs = 0, rhs_se = 0;  // int |f|^p dm
    double ratio = 0;
    double ratio_se = 0;
    double bound = 0;  // g^{(s-1)p}, g = (sqrt5-1)/2
    int64_t samples = 0;
};

inline ContractionReport mc_contraction(int s, double p, const MCConfig& cfg) {
    if (s < 1) throw domain_error("mc_contraction: s >= 1 required");
    ContractionReport rep;
    rep.s = s;
    rep.p = p;
    rep.samples = cfg.samples;
    const double gconst = 0.61803398874989484820458683436563812;
    rep.bound = std::pow(gconst, static_cast<double>(s - 1) * p);

    const int64_t n_batches = (cfg.samples + kBatch - 1) / kBatch;
    std::vector<long double> lsum(n_batches, 0), lsq(n_batches, 0),
        rsum(n_batches, 0), rsq(n_batches, 0);
    std::vector<int64_t> counts(n_batches, 0);
    parallel_for(
        n_batches,
        [&](int64_t bi) {
            std::mt19937_64 rng(stream_seed(cfg.seed, bi));
            const int64_t n =
                std::min<int64_t>(kBatch, cfg.samples - bi * kBatch);
            long double ls = 0, lq = 0, rs = 0, rq = 0;
            for (int64_t i = 0; i < n; ++i) {
                const double x = sample_gauss_measure(rng);
                // T^s f(x) = beta_{s-1}(x) log(1/alpha_s(x)) = gamma_s(x)
                double beta = 1.0, y = x;
                for (int l = 0; l < s; ++l) {
                    beta *= y;
                    y = gauss_map_d(y);
                    if (y <= 0.0) {  // rational hit in doubles; resample branch
                        y = 1e-17;
                    }
                }
                const double tf = std::pow(std::abs(beta * std::log(1.0 / y)), p);
                const double f = std::pow(std::log(1.0 / x), p);
                ls += tf;
                lq += tf * tf;
                rs += f;
                rq += f * f;
            }
            lsum[bi] = ls;
            lsq[bi] = lq;
            rsum[bi] = rs;
            rsq[bi] = rq;
            counts[bi] = n;
        },
        cfg.threads);

    long double ls = 0, lq = 0, rs = 0, rq = 0;
    int64_t tot = 0;
    for (int64_t bi = 0; bi < n_batches; ++bi) {
        ls += lsum[bi];
        lq += lsq[bi];
        rs += rsum[bi];
        rq += rsq[bi];
        tot += counts[bi];
    }
    rep.lhs = static_cast<double>(ls / tot);
    rep.rhs = static_cast<double>(rs / tot);
    rep.lhs_se = std::sqrt(std::max(0.0L, lq / tot - (ls / tot) * (ls / tot)) /
                           static_cast<long double>(tot));
    rep.rhs_se = std::sqrt(std::max(0.0L, rq / tot - (rs / tot) * (rs / tot)) /
                           static_cast<long double>(tot));
    rep.ratio = rep.lhs / rep.rhs;
    rep.ratio_se = rep.ratio * std::sqrt(std::pow(rep.lhs_se / rep.lhs, 2) +
                                         std::pow(rep.rhs_se / rep.rhs, 2));
    return rep;
}

// ---------------------------------------------------------------------------
// Lebesgue tail of q_s: meas{ q_s(x) >= exp(C1 s) } vs exp(-(C2-eps)s)
// ---------------------------------------------------------------------------

struct TailRow {
    int s = 0;
    double C1 = 0, C2 = 0;
    double empirical = 0;
    double se = 0;
    double wilson_lo = 0, wilson_hi = 0;
    double bound = 0;       // exp(-(C2 - eps) s) at eps = 0.1
    double gamma_tail = 0;  // Prob(X_1+...+X_s >= C1 s/2), Erlang series
    int64_t samples = 0;
};

struct TailReport {
    double C1 = 0;
    std::vector<TailRow> rows;
};

// survival of the Gamma(s,1) law at x: exp(-x) sum_{j<s} x^j/j!
inline double erlang_survival(int s, double x) {
    double term = 1.0, acc = 1.0;
    for (int j = 1; j < s; ++j) {
        term *= x / j;
        acc += term;
    }
    return std::exp(-x) * acc;
}

inline TailReport mc_tail_qs(double C1, const std::vector<int>& s_values,
                             const MCConfig& cfg) {
    if (C1 < 1.6180339887498948)
        throw domain_error("mc_tail_qs: C1 >= (sqrt5+1)/2 required");
    int s_max = 0;
    for (int s : s_values) s_max = std::max(s_max, s);
    // exactness precondition: the sampled denominators must dominate q_s
    if (cfg.den_bits_min < static_cast<int>(2.9 * s_max))
        throw domain_error("mc_tail_qs: denominator bits too small for s_max");

    const int64_t n_batches = (cfg.samples + kBatch - 1) / kBatch;
    std::vector<std::vector<int64_t>> hits(n_batches,
                                           std::vector<int64_t>(s_values.size(), 0));
    std::vector<int64_t> counts(n_batches, 0);
    std::vector<double> thresholds(s_values.size());
    for (size_t si = 0; si < s_values.size(); ++si)
        thresholds[si] = C1 * s_values[si];

    parallel_for(
        n_batches,
        [&](int64_t bi) {
            std::mt19937_64 rng(stream_seed(cfg.seed, bi));
            const int64_t n =
                std::min<int64_t>(kBatch, cfg.samples - bi * kBatch);
            for (int64_t i = 0; i < n; ++i) {
                const Rational x = sample_exact_rational(rng, cfg.den_bits_min,
                                                         cfg.den_bits_max);
                const cf::CFExpansion e = cf::cf_expand(x, s_max + 1);
                for (size_t si = 0; si < s_values.size(); ++si) {
                    const int s = s_values[si];
                    if (e.depth() < s) continue;  // terminated early: q_s tiny
                    const double logq = std::log(to_double(e.conv_q[s]));
                    if (logq >= thresholds[si]) ++hits[bi][si];
                }
            }
            counts[bi] = n;
        },
        cfg.threads);

    TailReport rep;
    rep.C1 = C1;
    const double C2 = 0.5 * C1 - std::log(C1) - 1.0 + kLog2;
    int64_t tot = 0;
    for (int64_t bi = 0; bi < n_batches; ++bi) tot += counts[bi];
    for (size_t si = 0; si < s_values.size(); ++si) {
        int64_t h = 0;
        for (int64_t bi = 0; bi < n_batches; ++bi) h += hits[bi][si];
        TailRow row;
        row.s = s_values[si];
        row.C1 = C1;
        row.C2 = C2;
        row.samples = tot;
        row.empirical = static_cast<double>(h) / tot;
        row.se = std::sqrt(row.empirical * (1.0 - row.empirical) / tot);
        const double z = 3.0, nn = static_cast<double>(tot);
        const double ph = row.empirical, z2 = z * z;
        const double denom = 1.0 + z2 / nn;
        const double center = (ph + z2 / (2 * nn)) / denom;
        const double half =
            z * std::sqrt(ph * (1 - ph) / nn + z2 / (4 * nn * nn)) / denom;
        row.wilson_lo = std::max(0.0, center - half);
        row.wilson_hi = std::min(1.0, center + half);
        row.bound = std::exp(-(C2 - 0.1) * row.s);
        row.gamma_tail = erlang_survival(row.s, 0.5 * C1 * row.s);
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// exhaustive cell checks (Lemmas on cell measure and log q_s, exact integers)
// ---------------------------------------------------------------------------

struct CellCheckReport {
    int s = 0;
    int64_t b_max = 0;
    int64_t n_cells = 0;
    int64_t measure_bound_failures = 0;  // length <= prod b_j^{-2}
    int64_t logq_bound_failures = 0;     // q_s <= prod b_j^2 * 2^s
    Rational total_length = 0;           // sums to < 1 over disjoint cells
};

inline CellCheckReport exhaustive_cell_check(int s, int64_t b_max) {
    if (s < 1 || b_max < 1) throw domain_error("exhaustive_cell_check: bad args");
    double budget = 1.0;
    for (int i = 0; i < s; ++i) budget *= static_cast<double>(b_max);
    if (budget > 1e7) throw resource_error("exhaustive_cell_check: enumeration budget exceeded");

    CellCheckReport rep;
    rep.s = s;
    rep.b_max = b_max;
    std::vector<int64_t> b(s, 1);
    for (;;) {
        // convergents for this quotient vector
        BigInt p0 = 1, q0 = 0, p1 = 0, q1 = 1;
        BigInt prod = 1;
        for (int j = 0; j < s; ++j) {
            BigInt p2 = b[j] * p1 + p0, q2 = b[j] * q1 + q0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            prod *= b[j];
        }
        ++rep.n_cells;
        const BigInt denom = q1 * (q1 + q0);  // 1/length
        if (denom < prod * prod) ++rep.measure_bound_failures;
        BigInt rhs = prod * prod;
        rhs <<= s;
        if (q1 > rhs) ++rep.logq_bound_failures;
        rep.total_length += Rational(BigInt(1), denom);

        int j = s - 1;
        while (j >= 0 && b[j] == b_max) b[j--] = 1;
        if (j < 0) break;
        ++b[j];
    }
    return rep;
}

}  // namespace nbsums::mc
