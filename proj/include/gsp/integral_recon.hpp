#pragma once

// Integral reconstruction route. The first-cumulant equation integrates to
//
//   Lambda(t) = int_0^t lambda = ln( S~_j(0) / S~_j(t) ),   S~(t) = e^{-tM} S(t),
//
// valid for either component j with S~_j(0) != 0, so measured states give
// Lambda directly. The second-cumulant equation in the transformed frame
// X~ = e^{2 Lambda} e^{-tR} X reduces to dX~/dt = D~, which is inverted for
// the diffusion vector with local finite differences.

#include <cmath>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/errors.hpp"

namespace gsp::integral {

/// S~(t) = e^{-tM} S(t); invertible for all t.
inline Vec2 s_tilde(const Vec2& s_t, const HamiltonianParams& params, double t) {
    return expM(params, -t) * s_t;
}

struct LambdaIntegralSeries {
    std::vector<double> times;
    std::vector<double> values;        ///< Lambda^expt(t_i)
    std::vector<int> component_used;   ///< j in {0, 1}
    double max_cross_discrepancy = 0.0;///< worst |Lambda_1 - Lambda_2| where both usable
};

struct LambdaExptOptions {
    double usable_threshold = 1e-6; ///< |S~_j| above this enables the cross-check
    double cross_tol = 1e-6;        ///< discrepancy beyond this flags model mismatch
    double vanish_threshold = 1e-12;
};

/// Extract Lambda(t_i) from a measured state series on `times` (times[0] must
/// be 0; states[0] is the prepared probe). The component with the larger
/// |S~_j| is used; when both components are usable their values are
/// cross-checked — disagreement beyond cross_tol means the first-moment
/// dynamics is not of the assumed form.
inline LambdaIntegralSeries lambda_capital_expt(const std::vector<double>& times,
                                                const std::vector<GaussianState>& states,
                                                const HamiltonianParams& params,
                                                const LambdaExptOptions& opt = {}) {
    if (times.size() != states.size() || times.empty() || times.front() != 0.0)
        throw ConfigError("lambda_capital_expt: need matching series starting at t = 0");

    const Vec2 s0 = CumulantVectors::from_state(states.front(), params).s;
    LambdaIntegralSeries out;
    out.times = times;
    out.values.reserve(times.size());
    out.component_used.reserve(times.size());

    for (std::size_t i = 0; i < times.size(); ++i) {
        const Vec2 st = s_tilde(CumulantVectors::from_state(states[i], params).s, params, times[i]);
        const int j = (std::abs(st[1]) > std::abs(st[0])) ? 1 : 0;
        if (std::abs(st[j]) < opt.vanish_threshold)
            throw VanishingComponent(
                "lambda_capital_expt: both components of S~ vanish; re-prepare the probe with "
                "nonzero first moments");
        if (std::abs(s0[j]) < opt.vanish_threshold)
            throw VanishingComponent("lambda_capital_expt: S~_j(0) vanishes for the usable component");
        const double val = std::log(s0[j] / st[j]);

        const int k = 1 - j;
        if (std::abs(st[k]) > opt.usable_threshold && std::abs(s0[k]) > opt.usable_threshold) {
            const double other = std::log(s0[k] / st[k]);
            const double disc = std::abs(val - other);
            out.max_cross_discrepancy = std::max(out.max_cross_discrepancy, disc);
            if (disc > opt.cross_tol)
                throw InconsistentComponents(
                    "lambda_capital_expt: the two components give different Lambda(t) — "
                    "the assumed generator class does not match the dynamics");
        }
        out.values.push_back(val);
        out.component_used.push_back(j);
    }
    return out;
}

struct DiffusionIntegralRecord {
    std::vector<double> times;
    std::vector<Vec3> rhs;    ///< X(t) - e^{tR} e^{-2 Lambda} X(0)
    std::vector<Vec3> xtilde; ///< e^{2 Lambda} e^{-tR} X(t)
    std::vector<Vec3> dtilde; ///< d/dt xtilde (finite differences)
};

/// Build the transformed second-cumulant record from measured states and the
/// Lambda series on the same grid. dX~/dt uses centered differences in the
/// interior and one-sided differences at the ends.
inline DiffusionIntegralRecord diffusion_rhs(const std::vector<double>& times,
                                             const std::vector<GaussianState>& states,
                                             const LambdaIntegralSeries& lambda_series,
                                             const HamiltonianParams& params) {
    if (times.size() != states.size() || times != lambda_series.times)
        throw ConfigError("diffusion_rhs: grids must match");
    const std::size_t n = times.size();
    if (n < 3) throw ConfigError("diffusion_rhs: need at least 3 grid points");

    DiffusionIntegralRecord rec;
    rec.times = times;
    rec.rhs.resize(n);
    rec.xtilde.resize(n);
    rec.dtilde.resize(n);

    const Vec3 x0 = CumulantVectors::from_state(states.front(), params).x;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i], L = lambda_series.values[i];
        const Vec3 x = CumulantVectors::from_state(states[i], params).x;
        rec.rhs[i] = x - std::exp(-2.0 * L) * (expR(params, t) * x0);
        rec.xtilde[i] = std::exp(2.0 * L) * (expR(params, -t) * x);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            const double h = times[1] - times[0];
            rec.dtilde[i] = (1.0 / h) * (rec.xtilde[1] - rec.xtilde[0]);
        } else if (i == n - 1) {
            const double h = times[n - 1] - times[n - 2];
            rec.dtilde[i] = (1.0 / h) * (rec.xtilde[n - 1] - rec.xtilde[n - 2]);
        } else {
            const double h = times[i + 1] - times[i - 1];
            rec.dtilde[i] = (1.0 / h) * (rec.xtilde[i + 1] - rec.xtilde[i - 1]);
        }
    }
    return rec;
}

struct RecoveredDiffusion {
    std::vector<double> times;
    std::vector<double> dqq, dpp, dqp;
    std::vector<double> delta; ///< 2 m w Dqq, the benchmark's normalized form
};

/// Invert D~ = e^{2 Lambda} e^{-tR} D pointwise: D = e^{-2 Lambda} e^{tR} dX~/dt.
inline RecoveredDiffusion recover_diffusion(const DiffusionIntegralRecord& rec,
                                            const LambdaIntegralSeries& lambda_series,
                                            const HamiltonianParams& params) {
    if (rec.times != lambda_series.times)
        throw ConfigError("recover_diffusion: grids must match");
    RecoveredDiffusion out;
    out.times = rec.times;
    const std::size_t n = rec.times.size();
    out.dqq.resize(n);
    out.dpp.resize(n);
    out.dqp.resize(n);
    out.delta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = rec.times[i], L = lambda_series.values[i];
        const Vec3 d = std::exp(-2.0 * L) * (expR(params, t) * rec.dtilde[i]);
        DiffusionVector::to_coefficients(d, params, out.dqq[i], out.dpp[i], out.dqp[i]);
        out.delta[i] = 2.0 * params.m * params.omega * out.dqq[i];
    }
    return out;
}

} // namespace gsp::integral
