// nbsums: batch front end for sweeps, verification and CSV/JSON emission.
//
// Commands: expand, gvalue, vasyunin, gram, theorem-sweep, constants, mc,
// nbdist, verify.  All outputs carry the run configuration, git revision and
// a config hash in header comments; identical configurations produce
// byte-identical files.  Exit codes: 0 success, 1 verification failure,
// 2 usage error.

#include "nbsums/constants.hpp"
#include "nbsums/gfunc.hpp"
#include "nbsums/nb.hpp"
#include "nbsums/report.hpp"
#include "nbsums/stats_mc.hpp"
#include "nbsums/theorem.hpp"
#include "nbsums/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace nbsums;

namespace {

struct OutSink {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
    void open(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw std::runtime_error("cannot open output file: " + path);
    }
};

// --config FILE (JSON object of flag -> value) injected as defaults; flags
// given on the command line win because every option takes the last value.
std::vector<std::string> inject_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") cfg_path = args[i + 1];
    if (cfg_path.empty()) return args;
    std::ifstream in(cfg_path);
    if (!in) throw std::runtime_error("cannot read config file: " + cfg_path);
    nlohmann::json j;
    in >> j;
    std::vector<std::string> merged;
    if (!args.empty()) merged.push_back(args[0]);  // subcommand first
    for (auto it = j.begin(); it != j.end(); ++it) {
        merged.push_back("--" + it.key());
        if (it.value().is_string())
            merged.push_back(it.value().get<std::string>());
        else
            merged.push_back(it.value().dump());
    }
    for (size_t i = 1; i < args.size(); ++i) merged.push_back(args[i]);
    return merged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite sums, continued fractions and weighted-L2 distances"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    int threads = 0;
    uint64_t seed = 0x5eed;
    std::string out_path, config_path, format = "csv";
    app.add_option("--threads", threads, "worker threads (default: NBSUMS_THREADS or hardware)");
    app.add_option("--seed", seed, "RNG seed for Monte-Carlo commands");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--config", config_path, "JSON file with flag defaults");
    app.add_option("--format", format, "csv or json (commands with a choice)");

    // ---- expand ----
    auto* c_expand = app.add_subcommand("expand", "continued-fraction data of a rational");
    int64_t xp = 1, xq = 3, max_depth = 1 << 20;
    c_expand->add_option("--num", xp, "numerator")->required();
    c_expand->add_option("--den", xq, "denominator")->required();
    c_expand->add_option("--max-depth", max_depth, "truncation depth");

    // ---- gvalue ----
    auto* c_gval = app.add_subcommand("gvalue", "g at h/k by both routes");
    c_gval->set_help_flag("--help", "print help");  // frees -h for the numerator
    int64_t gh = 1, gk = 3;
    c_gval->add_option("--h", gh)->required();
    c_gval->add_option("--k", gk)->required();

    // ---- vasyunin ----
    auto* c_vas = app.add_subcommand("vasyunin", "V, c0 and g over the residues of k");
    int64_t vk = 5;
    c_vas->add_option("--k", vk)->required();

    // ---- gram ----
    auto* c_gram = app.add_subcommand("gram", "Gram matrix, coefficients, distances");
    int64_t gram_n = 20;
    double gram_T = 2000.0;
    std::string gram_what = "summary";
    c_gram->add_option("--n", gram_n, "matrix size N");
    c_gram->add_option("--T", gram_T, "quadrature cutoff");
    c_gram->add_option("--what", gram_what, "matrix | coeffs | summary");

    // ---- theorem-sweep ----
    auto* c_thm = app.add_subcommand("theorem-sweep", "Moebius-weighted sums over k");
    int64_t k_min = 20, k_max = 150, k_step = 10;
    double D = 2.0, delta0 = 0.05;
    std::string scenario = "equation";
    c_thm->add_option("--kmin", k_min);
    c_thm->add_option("--kmax", k_max);
    c_thm->add_option("--kstep", k_step);
    c_thm->add_option("--D", D);
    c_thm->add_option("--delta0", delta0);
    c_thm->add_option("--scenario", scenario, "equation | phi (source of v0, z0)");

    // ---- constants ----
    auto* c_const = app.add_subcommand("constants", "solved constants with residuals");
    double const_tol = 1e-12;
    c_const->add_option("--tol", const_tol);

    // ---- mc ----
    auto* c_mc = app.add_subcommand("mc", "Monte-Carlo lemma experiments");
    std::string mc_op = "tail";
    int64_t mc_samples = 1000000;
    double mc_a = 0.0, mc_b = 0.5, mc_p = 2.0, mc_c1 = 2.0;
    int mc_smax = 10;
    int64_t cell_s = 2, cell_bmax = 30;
    c_mc->add_option("--op", mc_op, "invariance | contraction | tail | cells");
    c_mc->add_option("--samples", mc_samples);
    c_mc->add_option("--a", mc_a);
    c_mc->add_option("--b", mc_b);
    c_mc->add_option("--p", mc_p);
    c_mc->add_option("--C1", mc_c1);
    c_mc->add_option("--smax", mc_smax);
    c_mc->add_option("--cell-depth", cell_s);
    c_mc->add_option("--cell-bmax", cell_bmax);

    // ---- nbdist ----
    auto* c_nbd = app.add_subcommand("nbdist", "d_N^2 sweep (V_N and optimal)");
    std::string nbd_grid = "10,20,50,100,200,300,400,500";
    double nbd_T = 2000.0;
    c_nbd->add_option("--grid", nbd_grid, "comma-separated N values");
    c_nbd->add_option("--T", nbd_T, "quadrature cutoff");

    // ---- verify ----
    auto* c_verify = app.add_subcommand("verify", "identity/property suite");
    bool quick = false;
    c_verify->add_flag("--quick", quick, "reduced sizes");

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();  // global flags may follow the subcommand

    std::vector<std::string> args;
    try {
        args = inject_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), const_cast<char**>(cargs.data()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 2;
    }

    if (threads > 0) {
        setenv("NBSUMS_THREADS", std::to_string(threads).c_str(), 1);
    }

    OutSink sink;
    try {
        sink.open(out_path);
        std::ostream& os = sink.stream();

        rep::RunConfig cfg;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.format = format;

        if (*c_expand) {
            cfg.command = "expand";
            cfg.set("num", xp);
            cfg.set("den", xq);
            cfg.set("max_depth", max_depth);
            const cf::CFExpansion e = cf::cf_expand(Rational(xp, xq), static_cast<int>(max_depth));
            rep::write_csv_header(os, cfg,
                                  {"l", "a_l", "p_l", "q_l", "alpha_num",
                                   "alpha_den", "beta", "gamma"});
            for (int l = 1; l <= e.depth(); ++l) {
                const auto& al = e.alpha(l);
                rep::write_csv_row(
                    os, {std::to_string(l), e.quotients[l - 1].str(),
                         e.conv_p[l].str(), e.conv_q[l].str(),
                         boost::multiprecision::numerator(al).str(),
                         boost::multiprecision::denominator(al).str(),
                         fmt17(to_double(e.beta(l - 1))),
                         l - 1 < static_cast<int>(e.gammas.size())
                             ? fmt17(e.gammas[l - 1])
                             : "nan"});
            }
            return 0;
        }

        if (*c_gval) {
            cfg.command = "gvalue";
            cfg.set("h", gh);
            cfg.set("k", gk);
            static gfn::GEvaluator ge;
            const double gw = ge.g_wilton(gh, gk);
            const double gc = ge.g_rational(gh, gk);
            nlohmann::json j = rep::config_json(cfg);
            j["g_wilton"] = gw;
            j["g_cotangent"] = gc;
            j["difference"] = gw - gc;
            j["kappa"] = ge.kappa();
            j["sign_convention"] = ge.sign_convention();
            os << j.dump(2) << "\n";
            return 0;
        }

        if (*c_vas) {
            cfg.command = "vasyunin";
            cfg.set("k", vk);
            static gfn::GEvaluator ge;
            rep::write_csv_header(os, cfg, {"h", "k", "V", "c0_hbar", "g"});
            for (int64_t h = 1; h < vk; ++h) {
                if (std::gcd(h, vk) != 1) continue;
                rep::write_csv_row(
                    os, {std::to_string(h), std::to_string(vk),
                         fmt17(sums::vasyunin_V(h, vk)),
                         fmt17(sums::cotangent_c0(arith::mod_inverse(h, vk), vk)),
                         fmt17(ge.g_rational(h, vk))});
            }
            return 0;
        }

        if (*c_gram) {
            cfg.command = "gram";
            cfg.set("n", gram_n);
            cfg.set("T", gram_T);
            cfg.set("what", gram_what);
            const nb::GramMatrix gm = nb::GramMatrix::build(gram_n);
            if (gram_what == "matrix") {
                rep::write_csv_header(os, cfg, {"h", "k", "b_hk"});
                for (int64_t h = 1; h <= gram_n; ++h)
                    for (int64_t k = 1; k <= gram_n; ++k)
                        rep::write_csv_row(os, {std::to_string(h), std::to_string(k),
                                                fmt17(gm.B(h - 1, k - 1))});
                return 0;
            }
            const quad::ZetaGrid grid = quad::ZetaGrid::build(gram_T, 0.5);
            const nb::LinearTerms lt = nb::linear_terms(gram_n, grid);
            const auto mt = arith::MoebiusTable::build(std::max<int64_t>(gram_n, 2));
            const auto a = nb::vn_coefficients(gram_n, mt);
            if (gram_what == "coeffs") {
                rep::write_csv_header(os, cfg, {"n", "a_n", "ell_n", "ell_err"});
                for (int64_t n = 1; n <= gram_n; ++n)
                    rep::write_csv_row(os, {std::to_string(n), fmt17(a[n]),
                                            fmt17(lt.ell[n]), fmt17(lt.err_est[n])});
                return 0;
            }
            std::vector<double> aa(a.begin(), a.begin() + gram_n + 1);
            const auto dvn = nb::dn_squared_gram(aa, lt, gm);
            const auto opt = nb::gram_minimize(gm, lt, gram_n);
            nlohmann::json j = rep::config_json(cfg);
            j["dn2_vn"] = dvn.value;
            j["dn2_vn_err"] = dvn.err_est;
            j["dn2_optimal"] = opt.dn2;
            j["min_pivot"] = opt.min_pivot;
            j["ridged"] = opt.ridged;
            os << j.dump(2) << "\n";
            return 0;
        }

        if (*c_thm) {
            cfg.command = "theorem-sweep";
            cfg.set("kmin", k_min);
            cfg.set("kmax", k_max);
            cfg.set("kstep", k_step);
            cfg.set("D", D);
            cfg.set("delta0", delta0);
            cfg.set("scenario", scenario);
            const auto tc = consts::solve_theorem_constants(1e-12);
            const auto& sc = (scenario == "phi") ? tc.phi_clamped : tc.equation_root;
            const int64_t needed =
                static_cast<int64_t>(std::ceil(2.0 * std::pow(double(k_max), D)));
            const auto mt = arith::MoebiusTable::build(needed);
            static gfn::GEvaluator ge;
            std::vector<int64_t> ks;
            for (int64_t k = k_min; k <= k_max; k += k_step) ks.push_back(k);
            std::vector<thm::TheoremSumReport> reps(ks.size());
            parallel_for(static_cast<int64_t>(ks.size()), [&](int64_t i) {
                reps[i] = thm::theorem_sum(ks[i], D, delta0, sc.v0, sc.z0, mt, ge);
            });
            rep::write_csv_header(os, cfg,
                                  {"k", "D", "S", "normalized", "sigma1", "sigma2",
                                   "sigma3", "sigma11", "sigma12", "w"});
            for (const auto& r : reps)
                rep::write_csv_row(
                    os, {std::to_string(r.k), fmt17(r.D), fmt17(r.S),
                         fmt17(r.normalized), fmt17(r.sigma1), fmt17(r.sigma2),
                         fmt17(r.sigma3), fmt17(r.sigma11), fmt17(r.sigma12),
                         fmt17(r.w)});
            return 0;
        }

        if (*c_const) {
            cfg.command = "constants";
            cfg.set("tol", const_tol);
            const auto tc = consts::solve_theorem_constants(const_tol);
            const auto sc = consts::solve_section_constants(const_tol);
            nlohmann::json j = rep::config_json(cfg);
            const auto scenario_json = [](const consts::ConstantScenario& s) {
                nlohmann::json js;
                js["C"] = s.C;
                js["v0"] = s.v0;
                js["z0"] = s.z0;
                js["residual_C_equation"] = s.res_C;
                js["residual_v0_equation"] = s.res_v0;
                return js;
            };
            j["equation_root"] = scenario_json(tc.equation_root);
            j["phi_clamped"] = scenario_json(tc.phi_clamped);
            j["root_satisfies_phi_bound"] = tc.root_satisfies_phi_bound;
            j["C4"] = sc.C4;
            j["C5"] = sc.C5;
            j["residual_C4_equation"] = sc.res_C4;
            j["E_slope"] = sc.E_slope;
            j["H_slope"] = sc.H_slope;
            j["E_v0"] = sc.E(tc.equation_root.v0);
            j["H_4v0"] = sc.H(4.0 * tc.equation_root.v0);
            j["consistency_probe_E_minus_H"] = consts::consistency_probe(tc, sc, 0.0);
            os << j.dump(2) << "\n";
            return 0;
        }

        if (*c_mc) {
            cfg.command = "mc";
            cfg.set("op", mc_op);
            cfg.set("samples", mc_samples);
            mc::MCConfig mcfg;
            mcfg.seed = seed;
            mcfg.samples = mc_samples;
            mcfg.threads = threads;
            if (mc_op == "invariance") {
                cfg.set("a", mc_a);
                cfg.set("b", mc_b);
                const auto r = mc::mc_invariance(mc_a, mc_b, mcfg);
                rep::write_csv_header(os, cfg, {"s", "estimate", "bound", "stderr"});
                rep::write_csv_row(os, {"preimage", fmt17(r.preimage_est),
                                        fmt17(r.target), fmt17(r.preimage_se)});
                rep::write_csv_row(os, {"image", fmt17(r.image_est),
                                        fmt17(r.target), fmt17(r.image_se)});
            } else if (mc_op == "contraction") {
                cfg.set("p", mc_p);
                cfg.set("smax", int64_t(mc_smax));
                rep::write_csv_header(os, cfg, {"s", "estimate", "bound", "stderr"});
                for (int s = 1; s <= mc_smax; ++s) {
                    const auto r = mc::mc_contraction(s, mc_p, mcfg);
                    rep::write_csv_row(os, {std::to_string(s), fmt17(r.ratio),
                                            fmt17(r.bound), fmt17(r.ratio_se)});
                }
            } else if (mc_op == "tail") {
                cfg.set("C1", mc_c1);
                cfg.set("smax", int64_t(mc_smax));
                std::vector<int> svals;
                for (int s = 5; s <= mc_smax; s += 5) svals.push_back(s);
                if (svals.empty()) svals.push_back(mc_smax);
                const auto rep_t = mc::mc_tail_qs(mc_c1, svals, mcfg);
                rep::write_csv_header(os, cfg, {"s", "estimate", "bound", "stderr"});
                for (const auto& row : rep_t.rows)
                    rep::write_csv_row(os, {std::to_string(row.s), fmt17(row.empirical),
                                            fmt17(row.bound), fmt17(row.se)});
            } else if (mc_op == "cells") {
                cfg.set("cell_depth", cell_s);
                cfg.set("cell_bmax", cell_bmax);
                const auto r = mc::exhaustive_cell_check(static_cast<int>(cell_s),
                                                         cell_bmax);
                rep::write_csv_header(os, cfg, {"s", "estimate", "bound", "stderr"});
                rep::write_csv_row(os, {std::to_string(r.s),
                                        std::to_string(r.n_cells),
                                        fmt17(to_double(r.total_length)), "0"});
                if (r.measure_bound_failures || r.logq_bound_failures) return 1;
            } else {
                std::cerr << "unknown --op " << mc_op << "\n";
                return 2;
            }
            return 0;
        }

        if (*c_nbd) {
            cfg.command = "nbdist";
            cfg.set("grid", nbd_grid);
            cfg.set("T", nbd_T);
            std::vector<int64_t> grid_N;
            {
                std::stringstream ss(nbd_grid);
                std::string tok;
                while (std::getline(ss, tok, ',')) grid_N.push_back(std::stoll(tok));
            }
            const int64_t n_max = *std::max_element(grid_N.begin(), grid_N.end());
            const quad::ZetaGrid grid = quad::ZetaGrid::build(nbd_T, 0.5);
            const auto mt = arith::MoebiusTable::build(n_max);
            const nb::GramMatrix gm = nb::GramMatrix::build(n_max);
            const nb::LinearTerms lt = nb::linear_terms(n_max, grid);
            rep::write_csv_header(os, cfg,
                                  {"N", "dn2_vn", "dn2_opt", "asymptotic", "ratio"});
            for (int64_t N : grid_N) {
                const auto a = nb::vn_coefficients(N, mt);
                std::vector<double> aa(a.begin(), a.begin() + N + 1);
                const auto dvn = nb::dn_squared_gram(aa, lt, gm);
                const auto opt = nb::gram_minimize(gm, lt, N);
                const double asym =
                    (2.0 + kEulerGamma - std::log(4.0 * std::acos(-1.0))) /
                    std::log(static_cast<double>(N));
                rep::write_csv_row(os, {std::to_string(N), fmt17(dvn.value),
                                        fmt17(opt.dn2), fmt17(asym),
                                        fmt17(dvn.value / asym)});
            }
            return 0;
        }

        if (*c_verify) {
            cfg.command = "verify";
            cfg.set("quick", quick ? "true" : "false");
            const auto results = vrf::run_verification(quick, seed);
            int failures = 0;
            for (const auto& r : results) {
                os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.detail.empty()) os << " -- " << r.detail;
                os << "\n";
                if (!r.pass) ++failures;
            }
            os << (failures == 0 ? "verify: all checks passed\n"
                                 : "verify: " + std::to_string(failures) +
                                       " checks FAILED\n");
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
