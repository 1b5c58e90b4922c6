#pragma once

// Propagation of the five Gaussian cumulants under a GSP master equation,
// by an adaptive Runge-Kutta integrator and, when the integral of the
// friction coefficient is available in closed form, by the exact propagator
//
//   S(t) = e^{-Lambda(t)} e^{tM} S(0),
//   X(t) = e^{-2 Lambda(t)} e^{tR} X(0)
//          + int_0^t e^{-2[Lambda(t)-Lambda(u)]} e^{(t-u)R} D(u) du.
//
// The two paths are independent, which makes the exact one usable as an
// oracle for the solver and vice versa.

#include <cmath>
#include <functional>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/quadrature.hpp"

namespace gsp {

struct Trajectory {
    std::vector<double> times;
    std::vector<GaussianState> states;

    /// Worst Schroedinger-Robertson defect seen along the trajectory
    /// (negative values signal an unphysical coefficient set).
    double min_sr_defect = 0.0;
    bool uncertainty_warning = false;
};

struct SolverOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double sr_tol = 1e-9; ///< tolerance for the uncertainty diagnostic
};

namespace detail {

// 5-dimensional state y = (S1, S2, X1, X2, X3).
using State5 = std::array<double, 5>;

inline State5 rhs(const MecSet& mecs, const DriftMatrices& dm, const HamiltonianParams& p,
                  double t, const State5& y) {
    const double lam = mecs.lambda(t);
    const Vec2 S{y[0], y[1]};
    const Vec3 X{y[2], y[3], y[4]};
    const Vec2 dS = dm.m2 * S + (-lam) * S;
    const Vec3 D = DiffusionVector::from_mecs(mecs, p, t).d;
    const Vec3 dX = dm.r3 * X + (-2.0 * lam) * X + D;
    return {dS[0], dS[1], dX[0], dX[1], dX[2]};
}

template <class RHS>
State5 rk4_step(RHS&& f, double t, const State5& y, double h) {
    auto add = [](const State5& a, const State5& b, double c) {
        State5 r;
        for (int i = 0; i < 5; ++i) r[i] = a[i] + c * b[i];
        return r;
    };
    const State5 k1 = f(t, y);
    const State5 k2 = f(t + h / 2, add(y, k1, h / 2));
    const State5 k3 = f(t + h / 2, add(y, k2, h / 2));
    const State5 k4 = f(t + h, add(y, k3, h));
    State5 r;
    for (int i = 0; i < 5; ++i)
        r[i] = y[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return r;
}

// Classic step-doubling error control around RK4: one full step vs two half
// steps, Richardson-corrected result, local error ~ |y_h - y_hh| / 15.
template <class RHS>
void advance(RHS&& f, double& t, State5& y, double t_end, const SolverOptions& opt) {
    double h = (t_end - t) / 16.0;
    const double h_min = (t_end - t) * 1e-14;
    while (t < t_end) {
        if (t + h > t_end) h = t_end - t;
        const State5 full = rk4_step(f, t, y, h);
        State5 half = rk4_step(f, t, y, h / 2);
        half = rk4_step(f, t + h / 2, half, h / 2);
        double err = 0.0, scale = 0.0;
        bool finite = true;
        for (int i = 0; i < 5; ++i) {
            finite = finite && std::isfinite(full[i]) && std::isfinite(half[i]);
            err = std::max(err, std::abs(full[i] - half[i]) / 15.0);
            scale = std::max(scale, std::abs(half[i]));
        }
        const double tol = opt.abs_tol + opt.rel_tol * scale;
        if (finite && err <= tol) {
            for (int i = 0; i < 5; ++i) y[i] = half[i] + (half[i] - full[i]) / 15.0;
            t += h;
            h *= std::min(4.0, 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2));
        } else {
            h *= finite ? std::max(0.1, 0.9 * std::pow(tol / err, 0.2)) : 0.1;
            if (h < h_min) throw SolverFailure("evolve_cumulants: step size underflow");
        }
    }
}

} // namespace detail

/// Evolve an initial Gaussian state over a strictly increasing time grid
/// starting at 0.
inline Trajectory evolve_cumulants(const GaussianState& init, const MecSet& mecs,
                                   const HamiltonianParams& params,
                                   const std::vector<double>& grid,
                                   const SolverOptions& opt = {}) {
    params.validate();
    if (grid.empty() || grid.front() != 0.0)
        throw ConfigError("evolve_cumulants: grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("evolve_cumulants: grid must be strictly increasing");

    const DriftMatrices dm = build_drift_matrices(params);
    auto f = [&](double t, const detail::State5& y) { return detail::rhs(mecs, dm, params, t, y); };

    const CumulantVectors c0 = CumulantVectors::from_state(init, params);
    detail::State5 y{c0.s[0], c0.s[1], c0.x[0], c0.x[1], c0.x[2]};

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());
    traj.min_sr_defect = init.sr_defect();

    double t = 0.0;
    for (double tk : grid) {
        if (tk > t) detail::advance(f, t, y, tk, opt);
        CumulantVectors c;
        c.s = {y[0], y[1]};
        c.x = {y[2], y[3], y[4]};
        const GaussianState g = c.to_state(params);
        traj.min_sr_defect = std::min(traj.min_sr_defect, g.sr_defect());
        traj.states.push_back(g);
    }
    traj.uncertainty_warning = traj.min_sr_defect < -opt.sr_tol;
    return traj;
}

/// Exact propagator path. `capital_lambda` must be the antiderivative of
/// mecs.lambda with capital_lambda(0) = 0.
inline Trajectory evolve_exact(const GaussianState& init, const MecSet& mecs,
                               const std::function<double(double)>& capital_lambda,
                               const HamiltonianParams& params,
                               const std::vector<double>& grid,
                               double quad_abs_tol = 1e-12) {
    params.validate();
    const CumulantVectors c0 = CumulantVectors::from_state(init, params);

    Trajectory traj;
    traj.times = grid;
    traj.states.reserve(grid.size());
    traj.min_sr_defect = init.sr_defect();

    for (double t : grid) {
        const double L = capital_lambda(t);
        CumulantVectors c;
        c.s = std::exp(-L) * (expM(params, t) * c0.s);
        Vec3 x = std::exp(-2.0 * L) * (expR(params, t) * c0.x);
        for (int k = 0; k < 3; ++k) {
            x[k] += quad::integrate(
                [&](double u) {
                    const Vec3 Du = DiffusionVector::from_mecs(mecs, params, u).d;
                    return std::exp(-2.0 * (L - capital_lambda(u))) * (expR(params, t - u) * Du)[k];
                },
                0.0, t, quad_abs_tol);
        }
        c.x = x;
        const GaussianState g = c.to_state(params);
        traj.min_sr_defect = std::min(traj.min_sr_defect, g.sr_defect());
        traj.states.push_back(g);
    }
    traj.uncertainty_warning = traj.min_sr_defect < -1e-9;
    return traj;
}

} // namespace gsp
