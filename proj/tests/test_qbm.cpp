#include <doctest.h>

#include <cmath>
#include <complex>

#include "gsp/qbm_ohmic.hpp"
#include "gsp/quadrature.hpp"

using namespace gsp;
using qbm::cplx;

namespace {

// direct quadrature of int_0^tbar f(t) e^{ist} dt — the authoritative
// reference the closed forms are held against
template <class F>
cplx fourier_quad(F&& f, double tbar, double s) {
    const double re =
        quad::integrate([&](double t) { return f(t) * std::cos(s * t); }, 0.0, tbar, 1e-13, 1e-13);
    const double im =
        quad::integrate([&](double t) { return f(t) * std::sin(s * t); }, 0.0, tbar, 1e-13, 1e-13);
    return {re, im};
}

} // namespace

TEST_CASE("stationary values") {
    CHECK(qbm::stationary_values({0.0, 10.0, 10.0}).first == 0.0);
    CHECK(qbm::stationary_values({0.0, 10.0, 10.0}).second == 0.0);

    const auto [lam, del] = qbm::stationary_values(qbm::markovian_preset());
    CHECK(lam == doctest::Approx(0.009901).epsilon(1e-4));
    CHECK(del == doctest::Approx(0.19802).epsilon(1e-4));

    // non-Markovian regime: 2*0.01*0.01*10/1.01
    const auto nm = qbm::stationary_values(qbm::non_markovian_preset());
    CHECK(nm.second == doctest::Approx(2.0 * 0.01 * 0.01 * 10.0 / 1.01).epsilon(1e-12));
}

TEST_CASE("lambda_theor limits") {
    const auto p = qbm::markovian_preset();
    CHECK(qbm::lambda_theor(p, 0.0) == 0.0);
    const double lam_inf = qbm::stationary_values(p).first;
    CHECK(qbm::lambda_theor(p, 200.0 / p.omega_c) == doctest::Approx(lam_inf).epsilon(1e-6));
}

TEST_CASE("delta_theor limits") {
    const auto p = qbm::markovian_preset();
    CHECK(qbm::delta_theor(p, 0.0) == 0.0);
    CHECK(qbm::delta_theor(p, 200.0 / p.omega_c) ==
          doctest::Approx(qbm::stationary_values(p).second).epsilon(1e-8));
}

TEST_CASE("capital_lambda is the antiderivative of lambda") {
    for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
        CHECK(std::abs(qbm::capital_lambda_theor(p, 0.0)) < 1e-18);
        // quadrature of lambda vs closed form at several times
        for (double tc : {1.0, 5.0, 10.0}) {
            const double t = tc / p.omega_c;
            const double viaquad =
                quad::integrate([&](double u) { return qbm::lambda_theor(p, u); }, 0.0, t, 1e-13);
            CHECK(std::abs(viaquad - qbm::capital_lambda_theor(p, t)) < 1e-10);
        }
        // centered finite difference recovers lambda
        const double t = 3.0 / p.omega_c, h = 1e-6 / p.omega_c;
        const double fd =
            (qbm::capital_lambda_theor(p, t + h) - qbm::capital_lambda_theor(p, t - h)) / (2 * h);
        CHECK(std::abs(fd - qbm::lambda_theor(p, t)) < 1e-8);
    }
}

TEST_CASE("large-t slope of capital_lambda is the stationary friction") {
    const auto p = qbm::markovian_preset();
    const double t1 = 50.0 / p.omega_c, t2 = 100.0 / p.omega_c;
    const double slope =
        (qbm::capital_lambda_theor(p, t2) - qbm::capital_lambda_theor(p, t1)) / (t2 - t1);
    CHECK(slope == doctest::Approx(qbm::stationary_values(p).first).epsilon(1e-10));
}

TEST_CASE("transient envelope bound") {
    // |lambda(t) - lambda_inf| <= lambda_inf (1 + wc/w) e^{-wc t}
    for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
        const double lam_inf = qbm::stationary_values(p).first;
        for (int i = 1; i <= 300; ++i) {
            const double t = i * 0.05 / p.omega_c;
            const double bound = lam_inf * (1.0 + p.omega_c) * std::exp(-p.omega_c * t);
            CHECK(std::abs(qbm::lambda_theor(p, t) - lam_inf) <= bound * (1.0 + 1e-12) + 1e-300);
        }
    }
}

TEST_CASE("Markovian regime settles within one percent") {
    // Delta's transient envelope is (1 + w/wc) e^{-wc t}: below 1% from
    // 5/wc on. lambda's carries the wc/w-amplified sine, so its envelope
    // (1 + wc/w) e^{-wc t} only reaches 1% near t = ln(100 (1 + wc)) / wc
    // ~ 7/wc.
    const auto p = qbm::markovian_preset();
    const auto [lam_inf, del_inf] = qbm::stationary_values(p);
    for (int i = 0; i <= 50; ++i) {
        const double td = (5.0 + i * 0.5) / p.omega_c;
        CHECK(std::abs(qbm::delta_theor(p, td) - del_inf) < 0.01 * del_inf);
        const double tl = (7.5 + i * 0.5) / p.omega_c;
        CHECK(std::abs(qbm::lambda_theor(p, tl) - lam_inf) < 0.01 * lam_inf);
    }
}

TEST_CASE("model symmetry: Dqp = 0 and m w Dqq = Dpp/(m w)") {
    const auto mec = qbm::mecs(qbm::markovian_preset());
    for (double t : {0.0, 0.05, 0.31, 1.0}) {
        CHECK(mec.dqp(t) == 0.0);
        CHECK(mec.dqq(t) == mec.dpp(t)); // m = w = 1 units
    }
}

TEST_CASE("closed-form Fourier transforms match direct quadrature") {
    // master correctness gate: 20 frequencies x 2 regimes x 3 transforms
    for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
        const double tbar = 12.0 / p.omega_c;
        for (int i = 0; i < 20; ++i) {
            const double s = (0.05 + i * (i + 1) * 0.27) * p.omega_c; // spread, up to ~100 wc
            {
                const cplx a = qbm::fourier_capital_lambda(p, tbar, s);
                const cplx b = fourier_quad(
                    [&](double t) { return qbm::capital_lambda_theor(p, t); }, tbar, s);
                CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
            }
            {
                const cplx a = qbm::fourier_lambda_small(p, tbar, s);
                const cplx b =
                    fourier_quad([&](double t) { return qbm::lambda_theor(p, t); }, tbar, s);
                CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
            }
            {
                const cplx a = qbm::fourier_delta(p, tbar, s);
                const cplx b =
                    fourier_quad([&](double t) { return qbm::delta_theor(p, t); }, tbar, s);
                CHECK(std::abs(a - b) <= 1e-6 * std::abs(b));
            }
        }
    }
}

TEST_CASE("transforms are finite and consistent at s = 0") {
    for (const auto& p : {qbm::markovian_preset(), qbm::non_markovian_preset()}) {
        const double tbar = 12.0 / p.omega_c;
        const cplx f0 = qbm::fourier_capital_lambda(p, tbar, 0.0);
        const double direct = quad::integrate(
            [&](double t) { return qbm::capital_lambda_theor(p, t); }, 0.0, tbar, 1e-13);
        CHECK(std::abs(f0.imag()) < 1e-14);
        CHECK(f0.real() == doctest::Approx(direct).epsilon(1e-10));
        // continuity across the series/direct switch of the primitives,
        // which sits at |s tbar| = 0.5
        const double s_sw = 0.5 / tbar;
        const cplx below = qbm::fourier_capital_lambda(p, tbar, s_sw * (1.0 - 1e-9));
        const cplx above = qbm::fourier_capital_lambda(p, tbar, s_sw * (1.0 + 1e-9));
        CHECK(std::abs(above - below) < 1e-8 * std::abs(below));
    }
}

TEST_CASE("spectral magnitude decays past the main structure") {
    const auto p = qbm::markovian_preset();
    const double tbar = 12.0 / p.omega_c;
    const double s0 = 30.0;
    double hi = 0.0, lo = 1e300;
    // compare oscillation-enveloped magnitudes at s0 and 10 s0
    for (int i = 0; i < 40; ++i) {
        hi = std::max(hi, std::abs(qbm::fourier_capital_lambda(p, tbar, 10.0 * s0 + i * 0.2)));
        lo = std::min(lo, std::abs(qbm::fourier_capital_lambda(p, tbar, s0 + i * 0.2)));
    }
    CHECK(hi < lo); // envelope strictly decreased by 10x frequency growth
}

TEST_CASE("parameter validation and warnings") {
    CHECK_THROWS_AS(qbm::OhmicParams({0.1, -1.0, 10.0}).validate(), ConfigError);
    CHECK(qbm::OhmicParams{0.5, 10.0, 10.0}.warnings().size() == 1);
    CHECK(qbm::OhmicParams{0.5, 10.0, 1.0}.warnings().size() == 2);
    CHECK(qbm::markovian_preset().warnings().empty());
}
