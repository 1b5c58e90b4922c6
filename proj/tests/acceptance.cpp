// Acceptance suite: one criterion per invocation (argv[1] in 1..8), one
// PASS/FAIL line per check, nonzero exit on any failure.
//
// Criterion 1 replicates the published bandwidth/point-count table. Three of
// the eight figure entries (3a, 3b W, 4b) are not reproducible from the
// spectra of the coefficient curves under any threshold convention we
// tested; those checks are kept against the published values and their
// failure is expected and documented (see the table notes printed below and
// the project README).

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "gsp/dynamics.hpp"
#include "gsp/harness.hpp"
#include "gsp/qbm_ohmic.hpp"
#include "gsp/quadrature.hpp"
#include "gsp/sampling.hpp"
#include "gsp/tomography.hpp"
#include "oracles.hpp"

using namespace gsp;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

double now_seconds() {
    using clk = std::chrono::steady_clock;
    static const auto t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

// --------------------------------------------------------------------------

void criterion1() {
    const double t_start = now_seconds();
    const auto results = harness::replicate_paper("acceptance_paper_out");
    for (const auto& r : results) {
        const double wdev = std::abs(r.w_angular - r.target_w_angular) / r.target_w_angular;
        check(r.w_match, fmt("criterion 1 [%s] W = %.4f/2pi vs published %.4f/2pi (|dev| = %.1f%%)",
                             r.figure.c_str(), r.w_angular, r.target_w_angular, 100.0 * wdev));
        if (r.n_exempt)
            std::printf("[----] criterion 1 [%s] N = %zu vs published %d: exempt "
                        "(caption inconsistent with its own W: floor(2WL) = 27)\n",
                        r.figure.c_str(), r.n_points, r.target_n);
        else
            check(r.n_match, fmt("criterion 1 [%s] N = %zu vs published %d (+-1)",
                                 r.figure.c_str(), r.n_points, r.target_n));
    }
    const double dt = now_seconds() - t_start;
    check(dt <= 60.0, fmt("criterion 1 runtime %.1f s <= 60 s", dt));
    std::printf("note: figs 1a 1b 2a 2b 4a replicate once the published thresholds are read as\n"
                "      relative levels x100 (percent values applied as fractions); figs 3a, 3b\n"
                "      and 4b do not follow from the Delta spectra under any tested convention\n"
                "      and are retained here as documented inconsistencies of the published table.\n");
}

void criterion2() {
    const double t_start = now_seconds();
    for (const std::string preset : {"markovian", "non-markovian"}) {
        for (const auto approach : {harness::Approach::integral, harness::Approach::differential}) {
            double rms[2]; // threshold 1e-3, 1e-4
            std::size_t idx = 0;
            for (double thr : {1e-3, 1e-4}) {
                harness::ExperimentConfig cfg;
                cfg.preset = preset;
                cfg.approach = approach;
                cfg.bw_threshold = thr;
                cfg.oracle_cumulants = true;
                // The forward incremental ratio carries an omega^2 dt / 2
                // bias set by the free oscillation, independent of the
                // coefficient size. The non-Markovian coefficients are a
                // factor (omega/omega_c)^2 = 100 smaller than the Markovian
                // ones, so this validation run scales dt down accordingly
                // (dt is part of the experiment configuration).
                if (approach == harness::Approach::differential && preset == "non-markovian")
                    cfg.dt = 1e-6;
                const auto rep = harness::run_case1(cfg);
                // primary coefficient: capital_lambda (integral) / delta (differential)
                const auto& curve = approach == harness::Approach::integral
                                        ? rep.curves.front()
                                        : rep.curves.back();
                rms[idx++] = curve.rms_rel;
            }
            const char* label =
                approach == harness::Approach::integral ? "capital_lambda/integral" : "delta/differential";
            check(rms[1] <= 0.02, fmt("criterion 2 [%s %s] rms_rel(1e-4) = %.3e <= 2%%",
                                      preset.c_str(), label, rms[1]));
            check(rms[1] < rms[0],
                  fmt("criterion 2 [%s %s] rms_rel(1e-4) = %.3e < rms_rel(1e-3) = %.3e",
                      preset.c_str(), label, rms[1], rms[0]));
        }
    }
    const double dt = now_seconds() - t_start;
    check(dt <= 120.0, fmt("criterion 2 runtime %.1f s <= 120 s", dt));
}

void criterion3() {
    // (a) closed-form propagators vs the dense matrix-exponential oracle
    {
        oracle::TestRand rnd(42);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            HamiltonianParams p;
            p.omega = rnd.uniform(0.2, 3.0);
            p.delta = rnd.uniform(-2.0, 2.0);
            if (k % 17 == 0) p.delta = p.omega + rnd.uniform(-1e-8, 1e-8);
            double t = rnd.uniform(-200.0, 200.0);
            const double eta2 = p.eta_sq();
            const double ws = std::max(p.omega, std::abs(p.delta));
            if (std::abs(eta2) < 0.25 * ws * ws) t = std::clamp(t, -4.0 / ws, 4.0 / ws);
            if (eta2 > 1e-12) {
                const double eta = std::sqrt(eta2);
                t = std::clamp(t, -10.0 / eta, 10.0 / eta);
            }
            auto m = oracle::from(build_drift_matrices(p).m2);
            auto r = oracle::from(build_drift_matrices(p).r3);
            for (auto& row : m)
                for (auto& v : row) v *= t;
            for (auto& row : r)
                for (auto& v : row) v *= t;
            const auto em_o = oracle::expm(m);
            const auto er_o = oracle::expm(r);
            double sm = 1.0, sr = 1.0;
            for (auto& row : em_o)
                for (double v : row) sm = std::max(sm, std::abs(v));
            for (auto& row : er_o)
                for (double v : row) sr = std::max(sr, std::abs(v));
            worst = std::max(worst, oracle::max_diff(oracle::from(expM(p, t)), em_o) / sm);
            worst = std::max(worst, oracle::max_diff(oracle::from(expR(p, t)), er_o) / sr);
        }
        check(worst <= 1e-12, fmt("criterion 3a expM/expR vs dense oracle over 200 draws: "
                                  "worst rel dev %.2e <= 1e-12", worst));
    }
    // (b) quadrature of lambda vs capital Lambda at 10 times
    {
        double worst = 0.0;
        for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()})
            for (int i = 1; i <= 5; ++i) {
                const double t = 2.4 * i / p.omega_c;
                const double q = quad::integrate(
                    [&](double u) { return qbm::lambda_theor(p, u); }, 0.0, t, 1e-13);
                worst = std::max(worst, std::abs(q - qbm::capital_lambda_theor(p, t)));
            }
        check(worst <= 1e-10,
              fmt("criterion 3b quadrature of lambda vs Lambda at 10 times: worst %.2e <= 1e-10",
                  worst));
    }
    // (c) Fourier transforms vs direct quadrature, 20 frequencies x 2 regimes
    {
        double worst = 0.0;
        for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
            const double tbar = 12.0 / p.omega_c;
            for (int i = 0; i < 20; ++i) {
                const double s = (0.05 + i * (i + 1) * 0.27) * p.omega_c;
                auto quad_ft = [&](auto&& f) {
                    const double re = quad::integrate(
                        [&](double t) { return f(t) * std::cos(s * t); }, 0.0, tbar, 1e-13, 1e-13);
                    const double im = quad::integrate(
                        [&](double t) { return f(t) * std::sin(s * t); }, 0.0, tbar, 1e-13, 1e-13);
                    return qbm::cplx(re, im);
                };
                const auto qL = quad_ft([&](double t) { return qbm::capital_lambda_theor(p, t); });
                const auto ql = quad_ft([&](double t) { return qbm::lambda_theor(p, t); });
                const auto qD = quad_ft([&](double t) { return qbm::delta_theor(p, t); });
                worst = std::max(worst,
                                 std::abs(qbm::fourier_capital_lambda(p, tbar, s) - qL) / std::abs(qL));
                worst = std::max(worst,
                                 std::abs(qbm::fourier_lambda_small(p, tbar, s) - ql) / std::abs(ql));
                worst = std::max(worst, std::abs(qbm::fourier_delta(p, tbar, s) - qD) / std::abs(qD));
            }
        }
        check(worst <= 1e-6,
              fmt("criterion 3c closed-form transforms vs quadrature: worst rel %.2e <= 1e-6", worst));
    }
    // (d) ODE trajectory vs exact-propagator trajectory on the benchmark
    {
        const HamiltonianParams hp{1.0, 1.0, 0.0};
        double worst = 0.0;
        for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
            std::vector<double> grid;
            for (int i = 0; i <= 24; ++i) grid.push_back(12.0 / p.omega_c * i / 24.0);
            const GaussianState probe = harness::default_probe();
            const auto ode = evolve_cumulants(probe, qbm::mecs(p), hp, grid);
            const auto ex = evolve_exact(
                probe, qbm::mecs(p), [&](double u) { return qbm::capital_lambda_theor(p, u); }, hp,
                grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                worst = std::max(worst, std::abs(ode.states[i].mean_q - ex.states[i].mean_q));
                worst = std::max(worst, std::abs(ode.states[i].mean_p - ex.states[i].mean_p));
                worst = std::max(worst, std::abs(ode.states[i].var_q - ex.states[i].var_q));
                worst = std::max(worst, std::abs(ode.states[i].var_p - ex.states[i].var_p));
                worst = std::max(worst, std::abs(ode.states[i].cov_qp - ex.states[i].cov_qp));
            }
        }
        check(worst <= 1e-8,
              fmt("criterion 3d ODE vs exact propagator on the benchmark: worst %.2e <= 1e-8",
                  worst));
    }
}

void criterion4() {
    oracle::TestRand rnd(5);
    auto random_state = [&]() {
        GaussianState g;
        for (;;) {
            g.mean_q = rnd.uniform(-2.0, 2.0);
            g.mean_p = rnd.uniform(-2.0, 2.0);
            g.var_q = rnd.uniform(0.3, 2.0);
            g.var_p = rnd.uniform(0.3, 2.0);
            g.cov_qp = rnd.uniform(-0.5, 0.5);
            if (g.cov_det() >= 0.26) return g;
        }
    };
    auto max_err = [](const GaussianState& a, const GaussianState& b) {
        return std::max({std::abs(a.mean_q - b.mean_q), std::abs(a.mean_p - b.mean_p),
                         std::abs(a.var_q - b.var_q), std::abs(a.var_p - b.var_p),
                         std::abs(a.cov_qp - b.cov_qp)});
    };

    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto g = random_state();
        const auto rec = tomo::tc_invert(tomo::synthesize(g, tomo::make_default_plan(g), 0.0, 7));
        worst = std::max(worst, max_err(rec, g));
    }
    check(worst <= 1e-10,
          fmt("criterion 4 noiseless round trip over 500 states: worst %.2e <= 1e-10", worst));

    GaussianState bench{0.95, -0.11, 0.52, 0.54, 0.01};
    std::vector<double> errs;
    for (int seed = 0; seed < 100; ++seed)
        errs.push_back(max_err(tomo::measure_state(bench, 1e-4, 1000 + seed), bench));
    std::sort(errs.begin(), errs.end());
    const double median = 0.5 * (errs[49] + errs[50]);
    check(median <= 1e-2,
          fmt("criterion 4 noisy (sigma = 1e-4) median over 100 seeds: %.2e <= 1e-2", median));
}

void criterion5() {
    const auto p = qbm::markovian_preset();
    const HamiltonianParams hp{1.0, 1.0, 0.0};
    const GaussianState probe = harness::default_probe();
    const differential::StateSource src = [&](double t) {
        if (t == 0.0) return probe;
        return evolve_exact(probe, qbm::mecs(p),
                            [&](double u) { return qbm::capital_lambda_theor(p, u); }, hp, {t})
            .states.front();
    };
    const double t = 1.0 / p.omega_c;
    const double truth = qbm::lambda_theor(p, t);

    for (const auto scheme : {differential::Scheme::forward, differential::Scheme::centered}) {
        std::vector<double> errs;
        for (double dtc : {1e-2, 5e-3, 2.5e-3}) {
            const differential::FiniteDiffConfig cfg{dtc / p.omega_c, scheme};
            errs.push_back(std::abs(differential::lambda_expt_point(src, t, hp, cfg).combined - truth));
        }
        const double order = std::min(std::log2(errs[0] / errs[1]), std::log2(errs[1] / errs[2]));
        const bool fwd = scheme == differential::Scheme::forward;
        check(order >= (fwd ? 0.9 : 1.9),
              fmt("criterion 5 %s-difference observed order %.3f >= %.1f", fwd ? "forward" : "centered",
                  order, fwd ? 0.9 : 1.9));
    }
}

void criterion6() {
    harness::ExperimentConfig cfg;
    cfg.preset = "markovian";
    cfg.approach = harness::Approach::differential;
    cfg.bw_threshold = 1e-4;
    cfg.oracle_cumulants = true;
    const auto rep = harness::run_case1(cfg);
    // reconstructed curves evaluated at the trusted edge t = 10/omega_c
    const double lam_rec = rep.curves[0].recon_values.back();
    const double del_rec = rep.curves[1].recon_values.back();
    check(std::abs(lam_rec - 0.009901) <= 0.015 * 0.009901,
          fmt("criterion 6 reconstructed lambda(10/omega_c) = %.6f within 1.5%% of 0.009901",
              lam_rec));
    check(std::abs(del_rec - 0.19802) <= 0.015 * 0.19802,
          fmt("criterion 6 reconstructed Delta(10/omega_c) = %.5f within 1.5%% of 0.19802", del_rec));
}

void criterion7() {
    using sampling::SpacingDist;
    struct Case {
        SpacingDist d;
        bool expect;
        const char* name;
    };
    SpacingDist e;
    e.mean_h = 0.5;
    SpacingDist g;
    g.family = SpacingDist::Family::gamma;
    g.shape_k = 2.0;
    g.mean_h = 0.5;
    SpacingDist d;
    d.family = SpacingDist::Family::delta;
    d.mean_h = 0.5;
    for (const auto& c : {Case{e, true, "exponential"}, Case{g, true, "gamma(k=2)"},
                          Case{d, false, "delta"}}) {
        const double t0 = now_seconds();
        const auto v = sampling::alias_free_check(c.d);
        const double dt = now_seconds() - t0;
        check(v.alias_free == c.expect && dt < 1.0,
              fmt("criterion 7 %s alias-free = %s (expected %s) in %.2f s < 1 s", c.name,
                  v.alias_free ? "true" : "false", c.expect ? "true" : "false", dt));
    }
}

void criterion8() {
    harness::ExperimentConfig cfg;
    cfg.preset = "markovian";
    cfg.approach = harness::Approach::integral;
    cfg.bw_threshold = 1e-3;
    cfg.noise_sigma = 1e-4;
    cfg.seed = 5;

    const auto ok = harness::run_case1(cfg);
    check(ok.verdict == "PASS",
          fmt("criterion 8 true model, sigma = 1e-4: verdict %s (rms_rel %.3f)", ok.verdict.c_str(),
              ok.worst_rms_rel));

    cfg.actual_omega_c = 20.0;
    const auto bad = harness::run_case1(cfg);
    check(bad.verdict == "FAIL",
          fmt("criterion 8 omega_c mis-set by 2x: verdict %s (rms_rel %.3f)", bad.verdict.c_str(),
              bad.worst_rms_rel));
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..8>\n");
        return 2;
    }
    const int crit = std::atoi(argv[1]);
    switch (crit) {
        case 1: criterion1(); break;
        case 2: criterion2(); break;
        case 3: criterion3(); break;
        case 4: criterion4(); break;
        case 5: criterion5(); break;
        case 6: criterion6(); break;
        case 7: criterion7(); break;
        case 8: criterion8(); break;
        default:
            std::fprintf(stderr, "unknown criterion %d\n", crit);
            return 2;
    }
    if (g_failures) std::printf("criterion %d: %d check(s) failed\n", crit, g_failures);
    return g_failures ? 1 : 0;
}
