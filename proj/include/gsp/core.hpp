#pragma once

// Domain types for Gaussian-shape-preserving (GSP) dissipative dynamics and
// the closed-form propagators of the drift part.
//
// The master-equation class acts on the five cumulants of a Gaussian state.
// In dimensionless form the first cumulants S and second cumulants X obey
//
//     dS/dt = (M - lambda(t) I2) S,
//     dX/dt = (R - 2 lambda(t) I3) X + D(t),
//
// with drift matrices M, R built from the Hamiltonian parameters and a
// diffusion vector D built from the diffusion coefficients.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gsp/errors.hpp"
#include "gsp/linalg.hpp"

namespace gsp {

/// Hamiltonian parameters of H = p^2/2m + m w^2 q^2/2 + (d/2)(qp+pq).
/// Units: hbar = 1; omega sets the time unit.
struct HamiltonianParams {
    double m = 1.0;     ///< mass
    double omega = 1.0; ///< oscillator angular frequency
    double delta = 0.0; ///< coupling of the symmetrized qp term

    void validate() const {
        if (!(m > 0.0)) throw ConfigError("HamiltonianParams: m must be > 0");
        if (!(omega > 0.0)) throw ConfigError("HamiltonianParams: omega must be > 0");
        if (!std::isfinite(delta)) throw ConfigError("HamiltonianParams: delta must be finite");
    }

    /// eta^2 = delta^2 - omega^2; may be negative (oscillatory branch).
    double eta_sq() const { return delta * delta - omega * omega; }
};

/// The four time-dependent master-equation coefficients as evaluable
/// functions of time.
struct MecSet {
    std::function<double(double)> lambda; ///< friction coefficient
    std::function<double(double)> dqq;
    std::function<double(double)> dpp;
    std::function<double(double)> dqp;

    static MecSet zero() {
        auto z = [](double) { return 0.0; };
        return MecSet{z, z, z, z};
    }
};

/// First and second cumulants of a Gaussian state at one instant
/// (hbar = 1 natural units).
struct GaussianState {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.5;
    double var_p = 0.5;
    double cov_qp = 0.0;

    /// det of the covariance matrix.
    double cov_det() const { return var_q * var_p - cov_qp * cov_qp; }

    /// Schroedinger-Robertson defect: var_q var_p - cov^2 - 1/4.
    /// Physical states have defect >= 0.
    double sr_defect() const { return cov_det() - 0.25; }

    bool valid(double tol = 1e-9) const {
        return var_q > 0.0 && var_p > 0.0 && sr_defect() >= -tol;
    }
};

/// Dimensionless cumulant vectors
///   S = ( sqrt(m w) <q>, <p>/sqrt(m w) ),
///   X = ( m w Dq^2, Dp^2/(m w), sigma(q,p) ).
struct CumulantVectors {
    Vec2 s;
    Vec3 x;

    static CumulantVectors from_state(const GaussianState& g, const HamiltonianParams& p) {
        const double mw = p.m * p.omega;
        const double rmw = std::sqrt(mw);
        CumulantVectors c;
        c.s = {rmw * g.mean_q, g.mean_p / rmw};
        c.x = {mw * g.var_q, g.var_p / mw, g.cov_qp};
        return c;
    }

    GaussianState to_state(const HamiltonianParams& p) const {
        const double mw = p.m * p.omega;
        const double rmw = std::sqrt(mw);
        GaussianState g;
        g.mean_q = s[0] / rmw;
        g.mean_p = s[1] * rmw;
        g.var_q = x[0] / mw;
        g.var_p = x[1] * mw;
        g.cov_qp = x[2];
        return g;
    }
};

/// Diffusion vector D = 2 ( m w Dqq, Dpp/(m w), Dqp ).
struct DiffusionVector {
    Vec3 d;

    static DiffusionVector from_mecs(const MecSet& m, const HamiltonianParams& p, double t) {
        const double mw = p.m * p.omega;
        return DiffusionVector{{2.0 * mw * m.dqq(t), 2.0 * m.dpp(t) / mw, 2.0 * m.dqp(t)}};
    }

    /// Inverse of the scaling map: (Dqq, Dpp, Dqp) from a raw vector.
    static void to_coefficients(const Vec3& d, const HamiltonianParams& p,
                                double& dqq, double& dpp, double& dqp) {
        const double mw = p.m * p.omega;
        dqq = d[0] / (2.0 * mw);
        dpp = d[1] * mw / 2.0;
        dqp = d[2] / 2.0;
    }
};

/// Drift matrices of the cumulant equations.
struct DriftMatrices {
    Mat2 m2;
    Mat3 r3;
};

/// M = [[d, w], [-w, -d]],  R = [[2d, 0, 2w], [0, -2d, -2w], [-w, w, 0]].
inline DriftMatrices build_drift_matrices(const HamiltonianParams& p) {
    p.validate();
    const double w = p.omega, d = p.delta;
    DriftMatrices dm;
    dm.m2(0, 0) = d;  dm.m2(0, 1) = w;
    dm.m2(1, 0) = -w; dm.m2(1, 1) = -d;

    dm.r3(0, 0) = 2 * d; dm.r3(0, 1) = 0;      dm.r3(0, 2) = 2 * w;
    dm.r3(1, 0) = 0;     dm.r3(1, 1) = -2 * d; dm.r3(1, 2) = -2 * w;
    dm.r3(2, 0) = -w;    dm.r3(2, 1) = w;      dm.r3(2, 2) = 0;
    return dm;
}

namespace detail {

// cosh(t sqrt(x)) and sinh(t sqrt(x))/sqrt(x), continued through x <= 0
// where they become cos and sin/.; the pair is analytic in x, so a short
// series in u = x t^2 covers the neighborhood of the degenerate point
// delta = omega without branch switching. The hyperbolic branch goes
// through expm1 so that the difference quotients below keep full
// precision at moderate arguments.
inline void cosh_sinhc(double x, double t, double& c, double& s) {
    const double u = x * t * t;
    if (std::abs(u) < 1e-12) {
        c = 1.0 + u / 2.0 + u * u / 24.0 + u * u * u / 720.0;
        s = t * (1.0 + u / 6.0 + u * u / 120.0 + u * u * u / 5040.0);
    } else if (x > 0.0) {
        const double r = std::sqrt(x);
        const double ep = std::expm1(r * t), em = std::expm1(-r * t);
        c = 1.0 + 0.5 * (ep + em);
        s = 0.5 * (ep - em) / r;
    } else {
        const double r = std::sqrt(-x);
        c = std::cos(r * t);
        s = std::sin(r * t) / r;
    }
}

// (cosh(t sqrt(x)) - 1)/x with the same continuation; needed for exp(tR).
inline double coshm1_over(double x, double t) {
    const double u = x * t * t;
    if (std::abs(u) < 1e-12)
        return t * t * (0.5 + u / 24.0 + u * u / 720.0);
    if (x > 0.0) {
        const double r = std::sqrt(x);
        return 0.5 * (std::expm1(r * t) + std::expm1(-r * t)) / x;
    }
    const double h = std::sin(0.5 * std::sqrt(-x) * t);
    return 2.0 * h * h / (-x);
}

} // namespace detail

/// exp(t M) in closed form: M^2 = eta^2 I with eta^2 = delta^2 - omega^2, so
/// exp(tM) = cosh(eta t) I + sinh(eta t)/eta M (trig branch for eta^2 < 0).
inline Mat2 expM(const HamiltonianParams& p, double t) {
    const double e2 = p.eta_sq();
    double c, s;
    detail::cosh_sinhc(e2, t, c, s);
    const Mat2 M = build_drift_matrices(p).m2;
    return c * Mat2::identity() + s * M;
}

/// exp(t R) in closed form. R has eigenvalues {0, +-2 eta} and satisfies
/// R^3 = 4 eta^2 R, hence
/// exp(tR) = I + sinh(2 eta t)/(2 eta) R + (cosh(2 eta t) - 1)/(4 eta^2) R^2.
inline Mat3 expR(const HamiltonianParams& p, double t) {
    const double x = 4.0 * p.eta_sq();
    double c, s;
    detail::cosh_sinhc(x, t, c, s);
    const double f2 = detail::coshm1_over(x, t);
    const Mat3 R = build_drift_matrices(p).r3;
    return Mat3::identity() + s * R + f2 * (R * R);
}

} // namespace gsp
