#pragma once

// Ohmic quantum-Brownian-motion benchmark: weak-coupling, RWA,
// high-temperature master-equation coefficients in closed form, their
// integral, Fourier transforms of the support-restricted functions, and
// stationary limits. Everything is expressed in hbar = m = 1 units with
// omega = 1 setting the time scale; the cut-off omega_c and temperature
// are given in units of omega.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gsp/core.hpp"
#include "gsp/errors.hpp"

namespace gsp::qbm {

using cplx = std::complex<double>;

struct OhmicParams {
    double alpha = 0.1;       ///< system-bath coupling (dimensionless)
    double omega_c = 10.0;    ///< Lorentz-Drude cut-off, units of omega
    double temperature = 10.0;///< units hbar*omega/k_B

    void validate() const {
        if (!(omega_c > 0.0)) throw ConfigError("OhmicParams: omega_c must be > 0");
        if (!(alpha >= 0.0)) throw ConfigError("OhmicParams: alpha must be >= 0");
        if (!(temperature > 0.0)) throw ConfigError("OhmicParams: temperature must be > 0");
    }

    /// Validity warnings for the weak-coupling / high-temperature regime.
    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (alpha > 0.3) w.push_back("alpha > 0.3: weak-coupling form unreliable");
        if (temperature < 2.0) w.push_back("T < 2 hbar*omega/k_B: high-temperature form unreliable");
        return w;
    }
};

inline OhmicParams markovian_preset() { return OhmicParams{0.1, 10.0, 10.0}; }
inline OhmicParams non_markovian_preset() { return OhmicParams{0.1, 0.1, 10.0}; }

constexpr double kOmega = 1.0; // system frequency fixes the unit

/// (lambda_inf, Delta_inf): long-time limits of the two coefficients.
inline std::pair<double, double> stationary_values(const OhmicParams& p) {
    const double w = kOmega;
    const double den = p.omega_c * p.omega_c + w * w;
    const double lam = p.alpha * p.alpha * p.omega_c * p.omega_c * w / den;
    const double del = 2.0 * p.alpha * p.alpha * p.omega_c * p.omega_c * p.temperature / den;
    return {lam, del};
}

/// Friction coefficient lambda(t).
inline double lambda_theor(const OhmicParams& p, double t) {
    const double w = kOmega, wc = p.omega_c;
    const double lam_inf = stationary_values(p).first;
    return lam_inf * (1.0 - std::exp(-wc * t) * (std::cos(w * t) + (wc / w) * std::sin(w * t)));
}

/// Normalized diffusion Delta(t) = 2 m w Dqq = 2 Dpp/(m w); Dqp = 0.
inline double delta_theor(const OhmicParams& p, double t) {
    const double w = kOmega, wc = p.omega_c;
    const double del_inf = stationary_values(p).second;
    return del_inf * (1.0 - std::exp(-wc * t) * (std::cos(w * t) - (w / wc) * std::sin(w * t)));
}

/// Lambda(t) = int_0^t lambda, in closed form.
inline double capital_lambda_theor(const OhmicParams& p, double t) {
    const double w = kOmega, wc = p.omega_c;
    const double den = wc * wc + w * w;
    const double A = p.alpha * p.alpha * wc * wc * w * w / (den * den);
    return A * (w * t * den / (w * w) - 2.0 * wc / w +
                std::exp(-wc * t) * (2.0 * (wc / w) * std::cos(w * t) +
                                     ((wc * wc - w * w) / (w * w)) * std::sin(w * t)));
}

/// The full coefficient set as evaluable time functions (delta = 0 model).
inline MecSet mecs(const OhmicParams& p) {
    MecSet m;
    m.lambda = [p](double t) { return lambda_theor(p, t); };
    m.dqq = [p](double t) { return delta_theor(p, t) / 2.0; };  // m w Dqq = Delta/2
    m.dpp = [p](double t) { return delta_theor(p, t) / 2.0; };  // Dpp/(m w) = Delta/2
    m.dqp = [](double) { return 0.0; };
    return m;
}

namespace detail {

// Primitive integrals of the transforms, written through functions that are
// analytic in s. The only removable singular point on the real axis is
// s = 0; em1z and texp capture it with short series.

// (e^z - 1)/z
inline cplx em1z(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx sum = 1.0, term = 1.0;
        for (int k = 2; k <= 26; ++k) {
            term *= z / double(k);
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(z) - 1.0) / z;
}

// (e^z (z - 1) + 1)/z^2  =  int_0^1 u e^{zu} du  =  sum_k z^k / (k! (k+2))
inline cplx texp(cplx z) {
    if (std::abs(z) < 0.5) {
        cplx sum = 0.5, term = 1.0;
        for (int k = 1; k <= 26; ++k) {
            term *= z / double(k);
            sum += term / double(k + 2);
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

// int_0^T e^{ist} dt
inline cplx int_exp(double s, double T) { return T * em1z(cplx(0.0, s * T)); }

// int_0^T t e^{ist} dt
inline cplx int_texp(double s, double T) { return T * T * texp(cplx(0.0, s * T)); }

// int_0^T e^{(is-wc)t} cos(wt) dt ; the denominator z^2 + w^2 has no real-s
// zeros for wc > 0.
inline cplx int_cos(double s, double T, double wc, double w) {
    const cplx z(-wc, s);
    return (std::exp(z * T) * (z * std::cos(w * T) + w * std::sin(w * T)) - z) / (z * z + w * w);
}

// int_0^T e^{(is-wc)t} sin(wt) dt
inline cplx int_sin(double s, double T, double wc, double w) {
    const cplx z(-wc, s);
    return (std::exp(z * T) * (z * std::sin(w * T) - w * std::cos(w * T)) + w) / (z * z + w * w);
}

} // namespace detail

// Fourier convention: F[g](s) = int g(t) e^{i s t} dt, fixed by agreement
// with direct quadrature of the restricted time functions.

/// F of Lambda restricted to [0, tbar].
inline cplx fourier_capital_lambda(const OhmicParams& p, double tbar, double s) {
    const double w = kOmega, wc = p.omega_c;
    const double den = wc * wc + w * w;
    const double A = p.alpha * p.alpha * wc * wc * w * w / (den * den);
    return A * (den / w * detail::int_texp(s, tbar) -
                (2.0 * wc / w) * detail::int_exp(s, tbar) +
                (2.0 * wc / w) * detail::int_cos(s, tbar, wc, w) +
                ((wc * wc - w * w) / (w * w)) * detail::int_sin(s, tbar, wc, w));
}

/// F of lambda restricted to [0, tbar].
inline cplx fourier_lambda_small(const OhmicParams& p, double tbar, double s) {
    const double w = kOmega, wc = p.omega_c;
    const double lam_inf = stationary_values(p).first;
    return lam_inf * (detail::int_exp(s, tbar) - detail::int_cos(s, tbar, wc, w) -
                      (wc / w) * detail::int_sin(s, tbar, wc, w));
}

/// F of Delta restricted to [0, tbar].
inline cplx fourier_delta(const OhmicParams& p, double tbar, double s) {
    const double w = kOmega, wc = p.omega_c;
    const double del_inf = stationary_values(p).second;
    return del_inf * (detail::int_exp(s, tbar) - detail::int_cos(s, tbar, wc, w) +
                      (w / wc) * detail::int_sin(s, tbar, wc, w));
}

} // namespace gsp::qbm
