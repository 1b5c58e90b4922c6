#pragma once

// Symplectic tomography of a Gaussian state and its inverse: synthesize
// tomogram values on phase-space lines X = mu q + nu p, optionally with
// additive Gaussian measurement noise, and recover the five cumulants from
// a handful of points per line (log-quadratic inversion).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/errors.hpp"
#include "gsp/rng.hpp"

namespace gsp::tomo {

struct TomographyLine {
    double mu = 1.0;
    double nu = 0.0;

    void validate() const {
        if (mu == 0.0 && nu == 0.0)
            throw ConfigError("TomographyLine: (mu, nu) must not be (0, 0)");
    }
};

inline TomographyLine q_line() { return {1.0, 0.0}; }
inline TomographyLine p_line() { return {0.0, 1.0}; }
inline TomographyLine diag_line() { return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}; }

struct TomogramSample {
    TomographyLine line;
    double x = 0.0;
    double value = 0.0;
    double sigma_noise = 0.0;
};

/// Per-line abscissae to be measured.
struct LinePlan {
    TomographyLine line;
    std::vector<double> xs;
};

struct MeasurementPlan {
    std::vector<LinePlan> lines;

    std::size_t total_points() const {
        std::size_t n = 0;
        for (const auto& l : lines) n += l.xs.size();
        return n;
    }
};

/// Wigner function of a Gaussian state at a phase-space point.
inline double wigner_at(const GaussianState& g, double q, double p) {
    const double det = g.cov_det();
    if (det <= 0.0) throw DegenerateCovariance("wigner_at: var_q*var_p - cov^2 <= 0");
    const double dq = q - g.mean_q, dp = p - g.mean_p;
    const double quad =
        (g.var_p * dq * dq - 2.0 * g.cov_qp * dq * dp + g.var_q * dp * dp) / (2.0 * det);
    return std::exp(-quad) / (2.0 * M_PI * std::sqrt(det));
}

/// Mean of the tomogram along a line.
inline double line_mean(const GaussianState& g, const TomographyLine& l) {
    return l.mu * g.mean_q + l.nu * g.mean_p;
}

/// Variance of the tomogram along a line.
inline double line_variance(const GaussianState& g, const TomographyLine& l) {
    return l.mu * l.mu * g.var_q + l.nu * l.nu * g.var_p + 2.0 * l.mu * l.nu * g.cov_qp;
}

/// Tomogram value: the marginal of the Wigner function along the line.
inline double tomogram_at(const GaussianState& g, const TomographyLine& l, double x) {
    l.validate();
    const double v = line_variance(g, l);
    if (v <= 0.0) throw NonPositiveLineVariance("tomogram_at: line variance <= 0");
    const double d = x - line_mean(g, l);
    return std::exp(-d * d / (2.0 * v)) / std::sqrt(2.0 * M_PI * v);
}

/// Pilot plan: coarse abscissae {-1, 0, 1} on the two marginal lines around
/// a predicted center (zero when nothing is known), enough to seed the
/// adaptive placement of the full plan.
inline MeasurementPlan make_pilot_plan(double center_q = 0.0, double center_p = 0.0) {
    MeasurementPlan p;
    p.lines.push_back({q_line(), {center_q - 1.0, center_q, center_q + 1.0}});
    p.lines.push_back({p_line(), {center_p - 1.0, center_p, center_p + 1.0}});
    return p;
}

/// Default 4+4+2 plan placed around a reference state: points at
/// mean +- {0.5, 1.5} standard deviations on the marginal lines, and two
/// one-sided points on the diagonal line (distinct distances from the mean,
/// so the pairwise inversion stays well posed).
inline MeasurementPlan make_default_plan(const GaussianState& ref) {
    MeasurementPlan p;
    for (const auto& line : {q_line(), p_line()}) {
        const double m = line_mean(ref, line);
        const double sd = std::sqrt(std::max(line_variance(ref, line), 1e-12));
        p.lines.push_back({line, {m - 1.5 * sd, m - 0.5 * sd, m + 0.5 * sd, m + 1.5 * sd}});
    }
    const auto dl = diag_line();
    const double md = line_mean(ref, dl);
    const double sdd = std::sqrt(std::max(line_variance(ref, dl), 1e-12));
    p.lines.push_back({dl, {md + 0.5 * sdd, md + 1.5 * sdd}});
    return p;
}

/// Simulate the measurement: ideal tomogram values plus i.i.d. zero-mean
/// Gaussian noise. Deterministic under a fixed seed.
inline std::vector<TomogramSample> synthesize(const GaussianState& g, const MeasurementPlan& plan,
                                              double noise_sigma, std::uint64_t seed) {
    if (noise_sigma < 0.0) throw ConfigError("synthesize: noise_sigma must be >= 0");
    Rng rng(seed);
    std::vector<TomogramSample> out;
    out.reserve(plan.total_points());
    for (const auto& lp : plan.lines)
        for (double x : lp.xs) {
            double v = tomogram_at(g, lp.line, x);
            if (noise_sigma > 0.0) v += noise_sigma * rng.normal();
            out.push_back({lp.line, x, v, noise_sigma});
        }
    return out;
}

struct TcDiagnostics {
    bool uncertainty_warning = false; ///< reconstructed cumulants violate SR
    double sr_defect = 0.0;
};

namespace detail {

struct LineFit {
    double mean;
    double variance;
};

// Least-squares fit of ln(value) = a x^2 + b x + c (exact for 3 points).
inline LineFit fit_log_quadratic(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double S[5] = {0, 0, 0, 0, 0}; // sums of x^k
    double T0 = 0, T1 = 0, T2 = 0; // sums of y x^k
    for (std::size_t i = 0; i < n; ++i) {
        if (ys[i] <= 0.0)
            throw NonPositiveValue("tc_invert: nonpositive tomogram value, log-fit undefined");
        const double x = xs[i], y = std::log(ys[i]);
        double xp = 1.0;
        for (int k = 0; k < 5; ++k) {
            S[k] += xp;
            if (k < 3) {
                if (k == 0) T0 += y;
                if (k == 1) T1 += y * x;
                if (k == 2) T2 += y * x * x;
            }
            xp *= x;
        }
    }
    // normal equations for (a, b, c) ordered as coefficients of x^2, x, 1
    double A[3][4] = {{S[4], S[3], S[2], T2}, {S[3], S[2], S[1], T1}, {S[2], S[1], S[0], T0}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= f * A[col][c];
        }
    }
    const double a = A[0][3] / A[0][0];
    const double b = A[1][3] / A[1][1];
    if (!(a < 0.0))
        throw NonConcaveFit("tc_invert: log-quadratic fit not concave; add points or reduce noise");
    return {-b / (2.0 * a), -1.0 / (2.0 * a)};
}

// Variance along a line whose tomogram mean is already known; works with a
// single point (Newton on the transcendental normalization equation) or a
// pairwise closed form for two or more.
inline double variance_known_mean(double mean, const std::vector<double>& xs,
                                  const std::vector<double>& ys, double v_prior) {
    for (double y : ys)
        if (y <= 0.0) throw NonPositiveValue("tc_invert: nonpositive tomogram value");
    if (xs.size() >= 2) {
        // regression of ln y on (x - mean)^2: slope = -1/(2v)
        double sd = 0, sy = 0, sdd = 0, sdy = 0;
        const double n = double(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = (xs[i] - mean) * (xs[i] - mean), y = std::log(ys[i]);
            sd += d; sy += y; sdd += d * d; sdy += d * y;
        }
        const double slope = (n * sdy - sd * sy) / (n * sdd - sd * sd);
        if (!(slope < 0.0))
            throw NonConcaveFit("tc_invert: diagonal-line fit not concave");
        return -1.0 / (2.0 * slope);
    }
    // single point: solve -ln(2 pi v)/2 - d^2/(2v) = ln y, starting at the prior
    const double d2 = (xs[0] - mean) * (xs[0] - mean);
    const double ly = std::log(ys[0]);
    double v = std::max(v_prior, 1e-8);
    for (int it = 0; it < 80; ++it) {
        const double f = -0.5 * std::log(2.0 * M_PI * v) - d2 / (2.0 * v) - ly;
        const double df = -0.5 / v + d2 / (2.0 * v * v);
        if (std::abs(df) < 1e-300) break;
        const double step = f / df;
        v -= step;
        if (v <= 0.0) v = 1e-10;
        if (std::abs(step) < 1e-15 * v) break;
    }
    return v;
}

} // namespace detail

/// Recover the five cumulants from tomogram samples. Requires a line with
/// nu = 0, a line with mu = 0 (three or more points each), and at least one
/// further line for the covariance.
inline GaussianState tc_invert(const std::vector<TomogramSample>& samples,
                               TcDiagnostics* diag = nullptr) {
    std::vector<const TomogramSample*> qs, ps, ds;
    for (const auto& s : samples) {
        if (s.line.nu == 0.0) qs.push_back(&s);
        else if (s.line.mu == 0.0) ps.push_back(&s);
        else ds.push_back(&s);
    }
    if (qs.size() < 3 || ps.size() < 3)
        throw ConfigError("tc_invert: need >= 3 points on each marginal line");

    auto fit_marginal = [](const std::vector<const TomogramSample*>& v, bool is_q) {
        std::vector<double> xs, ys;
        const double scale = is_q ? v.front()->line.mu : v.front()->line.nu;
        for (auto* s : v) {
            xs.push_back(s->x);
            ys.push_back(s->value);
        }
        const auto f = detail::fit_log_quadratic(xs, ys);
        return detail::LineFit{f.mean / scale, f.variance / (scale * scale)};
    };
    const auto fq = fit_marginal(qs, true);
    const auto fp = fit_marginal(ps, false);

    GaussianState g;
    g.mean_q = fq.mean;
    g.mean_p = fp.mean;
    g.var_q = fq.variance;
    g.var_p = fp.variance;
    g.cov_qp = 0.0;

    if (!ds.empty()) {
        const TomographyLine l = ds.front()->line;
        std::vector<double> xs, ys;
        for (auto* s : ds) {
            xs.push_back(s->x);
            ys.push_back(s->value);
        }
        const double md = line_mean(g, l);
        const double v_prior = l.mu * l.mu * g.var_q + l.nu * l.nu * g.var_p;
        const double vd = detail::variance_known_mean(md, xs, ys, v_prior);
        g.cov_qp = (vd - l.mu * l.mu * g.var_q - l.nu * l.nu * g.var_p) / (2.0 * l.mu * l.nu);
    }

    if (diag) {
        diag->sr_defect = g.sr_defect();
        diag->uncertainty_warning = g.sr_defect() < -1e-9;
    }
    return g;
}

/// Full measurement chain at one time: pilot plan -> coarse state ->
/// adaptive plan -> final inversion. Seeds are consumed deterministically.
/// The pilot center would be the free-rotation prediction of the prepared
/// probe in an experiment; zero works for states within a vacuum width or
/// two of the origin.
inline GaussianState measure_state(const GaussianState& truth, double noise_sigma,
                                   std::uint64_t seed, TcDiagnostics* diag = nullptr,
                                   double pilot_center_q = 0.0, double pilot_center_p = 0.0) {
    const auto pilot =
        synthesize(truth, make_pilot_plan(pilot_center_q, pilot_center_p), noise_sigma, seed);
    // pilot has no diagonal line; invert with cov = 0 prior
    GaussianState coarse = tc_invert(pilot, nullptr);
    const auto plan = make_default_plan(coarse);
    const auto final_samples = synthesize(truth, plan, noise_sigma, seed + 0x9e3779b97f4a7c15ull);
    return tc_invert(final_samples, diag);
}

} // namespace gsp::tomo
