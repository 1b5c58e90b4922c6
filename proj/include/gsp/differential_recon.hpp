#pragma once

// Differential reconstruction route: all four coefficients pointwise from
// cumulants measured at t and t + dt. Derivatives are finite incremental
// ratios of the measured moments; inverting the cumulant equations then
// gives, for the first moments,
//
//   lambda =  delta + ( <p>/m        - d<q>/dt ) / <q>
//   lambda = -delta - ( m w^2 <q>    + d<p>/dt ) / <p>
//
// and for the second moments
//
//   Dqq = (lambda - delta) Dq^2 - sigma/m        + d(Dq^2)/dt / 2
//   Dpp = (lambda + delta) Dp^2 + m w^2 sigma    + d(Dp^2)/dt / 2
//   Dqp = m w^2 Dq^2 / 2 - Dp^2/(2m) + lambda sigma + d(sigma)/dt / 2.
//
// The increments enter through the plain moments, which is the only reading
// consistent with the linear moment equations; the forward-model tests
// enforce it.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/errors.hpp"

namespace gsp::differential {

enum class Scheme { forward, centered };

struct FiniteDiffConfig {
    double delta_t = 1e-4;            ///< smallest inter-measurement interval
    Scheme scheme = Scheme::forward;  ///< forward differences are the default

    void validate() const {
        if (!(delta_t > 0.0)) throw ConfigError("FiniteDiffConfig: delta_t must be > 0");
    }
};

/// Cumulants of the probe as a function of time; either an oracle or the
/// tomographic measurement chain.
using StateSource = std::function<GaussianState(double)>;

struct LambdaEstimate {
    std::optional<double> q_based;
    std::optional<double> p_based;
    double combined = 0.0;
};

namespace detail {

struct Increments {
    GaussianState at;    // cumulants at the estimation point
    GaussianState lo, hi;
    double span;
};

inline Increments sample(const StateSource& src, double t, const FiniteDiffConfig& cfg) {
    cfg.validate();
    Increments inc;
    inc.at = src(t);
    if (cfg.scheme == Scheme::forward) {
        inc.lo = inc.at;
        inc.hi = src(t + cfg.delta_t);
        inc.span = cfg.delta_t;
    } else {
        const double h = std::min(cfg.delta_t, t > 0.0 ? t : cfg.delta_t);
        inc.lo = (t >= h) ? src(t - h) : src(0.0);
        inc.hi = src(t + h);
        inc.span = (t >= h) ? 2.0 * h : h + t;
    }
    return inc;
}

} // namespace detail

constexpr double kDenominatorFloor = 1e-9;

/// Friction estimate at time t, from both first-moment equations. The two
/// variants are averaged with weights proportional to the squared
/// denominators, which suppresses the variant whose moment is crossing zero.
inline LambdaEstimate lambda_expt_point(const StateSource& src, double t,
                                        const HamiltonianParams& params,
                                        const FiniteDiffConfig& cfg) {
    const auto inc = detail::sample(src, t, cfg);
    const double dq_dt = (inc.hi.mean_q - inc.lo.mean_q) / inc.span;
    const double dp_dt = (inc.hi.mean_p - inc.lo.mean_p) / inc.span;
    const double q = inc.at.mean_q, p = inc.at.mean_p;

    LambdaEstimate est;
    if (std::abs(q) > kDenominatorFloor)
        est.q_based = params.delta + (p / params.m - dq_dt) / q;
    if (std::abs(p) > kDenominatorFloor)
        est.p_based = -params.delta -
                      (params.m * params.omega * params.omega * q + dp_dt) / p;

    if (est.q_based && est.p_based) {
        const double wq = q * q, wp = p * p;
        est.combined = (wq * *est.q_based + wp * *est.p_based) / (wq + wp);
    } else if (est.q_based) {
        est.combined = *est.q_based;
    } else if (est.p_based) {
        est.combined = *est.p_based;
    } else {
        throw BothDenominatorsVanish(
            "lambda_expt_point: both first moments vanish at this time; move the "
            "estimation point by a phase of the free rotation");
    }
    return est;
}

struct DiffusionEstimate {
    double dqq = 0.0, dpp = 0.0, dqp = 0.0;
    double delta_qform = 0.0; ///< 2 m w Dqq
    double delta_pform = 0.0; ///< 2 Dpp / (m w)
    double delta_combined = 0.0;
};

/// Diffusion estimates at time t given a friction value there.
inline DiffusionEstimate diffusion_expt_point(const StateSource& src, double t, double lambda_at_t,
                                              const HamiltonianParams& params,
                                              const FiniteDiffConfig& cfg) {
    const auto inc = detail::sample(src, t, cfg);
    const double dvq = (inc.hi.var_q - inc.lo.var_q) / inc.span;
    const double dvp = (inc.hi.var_p - inc.lo.var_p) / inc.span;
    const double dcv = (inc.hi.cov_qp - inc.lo.cov_qp) / inc.span;
    const double m = params.m, w = params.omega, d = params.delta, lam = lambda_at_t;
    const GaussianState& g = inc.at;

    DiffusionEstimate e;
    e.dqq = (lam - d) * g.var_q - g.cov_qp / m + dvq / 2.0;
    e.dpp = (lam + d) * g.var_p + m * w * w * g.cov_qp + dvp / 2.0;
    e.dqp = 0.5 * m * w * w * g.var_q - g.var_p / (2.0 * m) + lam * g.cov_qp + dcv / 2.0;
    e.delta_qform = 2.0 * m * w * e.dqq;
    e.delta_pform = 2.0 * e.dpp / (m * w);
    e.delta_combined = 0.5 * (e.delta_qform + e.delta_pform);
    return e;
}

struct DifferentialSeries {
    std::vector<double> times;
    std::vector<double> lambda_q, lambda_p, lambda;
    std::vector<double> dqq, dpp, dqp;
    std::vector<double> delta_qform, delta_pform, delta;
};

/// Pointwise coefficient estimates on a set of plan times.
inline DifferentialSeries reconstruct_differential(const StateSource& src,
                                                   const FiniteDiffConfig& cfg,
                                                   const std::vector<double>& plan_times,
                                                   const HamiltonianParams& params) {
    DifferentialSeries out;
    out.times = plan_times;
    const std::size_t n = plan_times.size();
    out.lambda_q.resize(n); out.lambda_p.resize(n); out.lambda.resize(n);
    out.dqq.resize(n); out.dpp.resize(n); out.dqp.resize(n);
    out.delta_qform.resize(n); out.delta_pform.resize(n); out.delta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = plan_times[i];
        const auto le = lambda_expt_point(src, t, params, cfg);
        const auto de = diffusion_expt_point(src, t, le.combined, params, cfg);
        out.lambda_q[i] = le.q_based.value_or(std::nan(""));
        out.lambda_p[i] = le.p_based.value_or(std::nan(""));
        out.lambda[i] = le.combined;
        out.dqq[i] = de.dqq;
        out.dpp[i] = de.dpp;
        out.dqp[i] = de.dqp;
        out.delta_qform[i] = de.delta_qform;
        out.delta_pform[i] = de.delta_pform;
        out.delta[i] = de.delta_combined;
    }
    return out;
}

} // namespace gsp::differential
