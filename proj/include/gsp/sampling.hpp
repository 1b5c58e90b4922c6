#pragma once

// Sampling-theorem machinery: Shannon reconstruction from uniform samples,
// effective-bandwidth estimation by relative thresholding of a spectrum,
// support restriction with a trusted window, additive-random sampling plans
// and the alias-free test on the spacing's characteristic function.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsp/errors.hpp"
#include "gsp/rng.hpp"

namespace gsp::sampling {

using cplx = std::complex<double>;

/// A finite set of (time, value) samples with support and bandwidth metadata.
/// When bandwidth_w (cycles per unit time) is present the samples must sit on
/// the uniform grid n/(2W).
struct SampledFunction {
    std::vector<double> times;
    std::vector<double> values;
    double support_tbar = 0.0;  ///< function is zero-extended beyond [0, tbar]
    double trusted_hi = 0.0;    ///< reconstruction trusted on [0, trusted_hi]
    std::optional<double> bandwidth_w;
    bool gibbs_flag = false;    ///< set when xi -> 0 leaves no Gibbs guard

    void validate() const {
        if (times.size() != values.size()) throw ConfigError("SampledFunction: size mismatch");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw ConfigError("SampledFunction: times must be strictly increasing");
        if (!times.empty() && (times.front() < -1e-12 || times.back() > support_tbar + 1e-9))
            throw ConfigError("SampledFunction: times outside support");
        if (bandwidth_w) {
            const double h = 1.0 / (2.0 * *bandwidth_w);
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double n = std::round(times[i] / h);
                if (std::abs(times[i] - n * h) > 1e-12)
                    throw ConfigError("SampledFunction: samples not on the 1/(2W) grid");
            }
        }
    }
};

/// Evaluate the truncated sinc series at time t. At a stored sample time the
/// stored value is returned directly (all other sinc terms vanish there).
inline double shannon_reconstruct(const SampledFunction& f, double t) {
    if (!f.bandwidth_w) throw NoBandwidth("shannon_reconstruct: bandwidth metadata absent");
    const auto it = std::lower_bound(f.times.begin(), f.times.end(), t);
    if (it != f.times.end() && *it == t) return f.values[std::size_t(it - f.times.begin())];

    const double two_w = 2.0 * *f.bandwidth_w;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.times.size(); ++i) {
        const double x = M_PI * (two_w * t - std::round(two_w * f.times[i]));
        sum += f.values[i] * (std::abs(x) < 1e-14 ? 1.0 : std::sin(x) / x);
    }
    return sum;
}

struct SpectrumEstimate {
    std::vector<double> s;          ///< angular frequencies, symmetric about 0
    std::vector<double> magnitude;  ///< |F(s)| >= 0
    enum class Source { analytic, discrete } source = Source::analytic;

    void validate() const {
        if (s.size() != magnitude.size() || s.empty())
            throw EmptySpectrum("SpectrumEstimate: empty or mismatched grids");
    }
};

/// Largest |s| on the grid where |F| >= threshold_rel * max|F|, as a
/// bandwidth W = s_max / (2 pi) in cycles per unit time.
inline double effective_bandwidth(const SpectrumEstimate& spec, double threshold_rel) {
    spec.validate();
    if (!(threshold_rel > 0.0 && threshold_rel < 1.0))
        throw ConfigError("effective_bandwidth: threshold must be in (0, 1)");
    double mx = 0.0;
    for (double m : spec.magnitude) mx = std::max(mx, m);
    if (mx <= 0.0) throw EmptySpectrum("effective_bandwidth: spectrum is identically zero");
    double s_max = 0.0;
    for (std::size_t i = 0; i < spec.s.size(); ++i)
        if (spec.magnitude[i] >= threshold_rel * mx) s_max = std::max(s_max, std::abs(spec.s[i]));
    return s_max / (2.0 * M_PI);
}

/// Same rule on a continuous |F|, with a uniform scan over [0, s_hi] and a
/// bisection refinement of the outermost crossing.
inline double effective_bandwidth_scan(const std::function<double(double)>& mag,
                                       double s_hi, double threshold_rel,
                                       std::size_t n_scan = 200000) {
    if (!(threshold_rel > 0.0 && threshold_rel < 1.0))
        throw ConfigError("effective_bandwidth_scan: threshold must be in (0, 1)");
    const double ds = s_hi / double(n_scan);
    double mx = 0.0;
    std::vector<double> vals(n_scan + 1);
    for (std::size_t i = 0; i <= n_scan; ++i) {
        vals[i] = mag(double(i) * ds);
        mx = std::max(mx, vals[i]);
    }
    if (mx <= 0.0) throw EmptySpectrum("effective_bandwidth_scan: zero spectrum");
    const double level = threshold_rel * mx;
    std::size_t idx = 0;
    bool found = false;
    for (std::size_t i = n_scan + 1; i-- > 0;) {
        if (vals[i] >= level) {
            idx = i;
            found = true;
            break;
        }
    }
    if (!found) return 0.0;
    double a = double(idx) * ds, b = std::min(double(idx + 1) * ds, s_hi);
    for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (mag(m) >= level ? a : b) = m;
    }
    return 0.5 * (a + b) / (2.0 * M_PI);
}

/// Integral variant: smallest symmetric interval containing all but
/// `threshold_rel` of the total integral of |F| over the scanned range.
inline double effective_bandwidth_integral(const std::function<double(double)>& mag,
                                           double s_hi, double threshold_rel,
                                           std::size_t n_scan = 200000) {
    if (!(threshold_rel > 0.0 && threshold_rel < 1.0))
        throw ConfigError("effective_bandwidth_integral: threshold must be in (0, 1)");
    const double ds = s_hi / double(n_scan);
    std::vector<double> cum(n_scan + 1, 0.0);
    double prev = mag(0.0);
    for (std::size_t i = 1; i <= n_scan; ++i) {
        const double cur = mag(double(i) * ds);
        cum[i] = cum[i - 1] + 0.5 * (prev + cur) * ds;
        prev = cur;
    }
    const double total = cum[n_scan];
    if (total <= 0.0) throw EmptySpectrum("effective_bandwidth_integral: zero spectrum");
    const double target = (1.0 - threshold_rel) * total;
    const auto it = std::lower_bound(cum.begin(), cum.end(), target);
    return double(it - cum.begin()) * ds / (2.0 * M_PI);
}

/// Uniform sample times n/(2W) interior to (0, L]; the t = 0 ordinate is the
/// prepared initial value and is not a measurement, so the plan (and the
/// count floor(2WL)) starts at n = 1. An endpoint landing exactly on the
/// grid is included.
inline std::vector<double> uniform_plan(double bandwidth_w, double support_len) {
    if (!(bandwidth_w > 0.0) || !(support_len > 0.0))
        throw ConfigError("uniform_plan: W and support length must be > 0");
    const double h = 1.0 / (2.0 * bandwidth_w);
    const auto n = std::size_t(std::floor(2.0 * bandwidth_w * support_len * (1.0 + 1e-12)));
    std::vector<double> times(n);
    for (std::size_t k = 0; k < n; ++k) times[k] = double(k + 1) * h;
    return times;
}

/// Attach support and trusted-window metadata (the tilde restriction).
inline void restrict_and_window(SampledFunction& f, double tbar, double xi) {
    if (!(tbar > 0.0) || xi < 0.0 || xi >= tbar)
        throw ConfigError("restrict_and_window: need tbar > xi >= 0");
    f.support_tbar = tbar;
    f.trusted_hi = tbar - xi;
    f.gibbs_flag = xi < 1e-12; // Gibbs overshoot reaches into the trusted window
}

namespace detail {

inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail

/// Discrete spectrum of a function given on a dense uniform grid over
/// [0, tbar]. The function is zero outside its support, so zero padding is
/// exact; `min_pad_len` controls the frequency resolution 2 pi/(N dt).
inline SpectrumEstimate discrete_spectrum(const std::vector<double>& values, double tbar,
                                          double min_pad_len = 0.0) {
    if (values.size() < 4096)
        throw GridTooCoarse("discrete_spectrum: need at least 4096 grid points");
    const double dt = tbar / double(values.size() - 1);
    std::size_t n = 1;
    const double want = std::max(min_pad_len, 16.0 * tbar);
    while (double(n) * dt < want || n < 2 * values.size()) n <<= 1;
    std::vector<cplx> buf(n, cplx(0.0));
    for (std::size_t i = 0; i < values.size(); ++i) buf[i] = values[i];
    detail::fft_radix2(buf, false);

    // one-sided magnitudes mirrored onto a symmetric grid; F(s) ~ dt * DFT
    const std::size_t half = n / 2;
    SpectrumEstimate spec;
    spec.source = SpectrumEstimate::Source::discrete;
    spec.s.resize(2 * half + 1);
    spec.magnitude.resize(2 * half + 1);
    const double ds = 2.0 * M_PI / (double(n) * dt);
    for (std::size_t k = 0; k <= half; ++k) {
        const double m = std::abs(buf[k]) * dt;
        spec.s[half + k] = double(k) * ds;
        spec.magnitude[half + k] = m;
        spec.s[half - k] = -double(k) * ds;
        spec.magnitude[half - k] = m;
    }
    return spec;
}

/// Spacing distribution of an additive random sampling.
struct SpacingDist {
    enum class Family { exponential, gamma, delta } family = Family::exponential;
    double mean_h = 1.0;
    double shape_k = 2.0; ///< gamma only

    void validate() const {
        if (!(mean_h > 0.0)) throw ConfigError("SpacingDist: mean spacing must be > 0");
        if (family == Family::gamma && !(shape_k > 0.0))
            throw ConfigError("SpacingDist: gamma shape must be > 0");
    }

    /// Characteristic function phi(w) = E[e^{i w gamma}].
    cplx characteristic(double w) const {
        switch (family) {
            case Family::exponential: return 1.0 / (cplx(1.0, -w * mean_h));
            case Family::gamma: return std::pow(cplx(1.0, -w * mean_h / shape_k), -shape_k);
            case Family::delta: return std::exp(cplx(0.0, w * mean_h));
        }
        throw UnknownCharacteristicFunction("SpacingDist: unsupported family");
    }

    std::string name() const {
        switch (family) {
            case Family::exponential: return "exponential";
            case Family::gamma: return "gamma";
            case Family::delta: return "delta";
        }
        return "?";
    }
};

struct RandomSamplingPlan {
    SpacingDist dist;
    std::vector<double> times;
};

/// t_n = t_{n-1} + gamma_n with t_0 = 0 (not itself a sample). The delta
/// family multiplies out the recursion so its times coincide bit-for-bit
/// with uniform_plan.
inline RandomSamplingPlan random_plan(const SpacingDist& dist, std::size_t n, std::uint64_t seed) {
    dist.validate();
    if (n < 1) throw ConfigError("random_plan: need n >= 1");
    RandomSamplingPlan plan;
    plan.dist = dist;
    plan.times.resize(n);
    if (dist.family == SpacingDist::Family::delta) {
        for (std::size_t i = 0; i < n; ++i) plan.times[i] = double(i + 1) * dist.mean_h;
        return plan;
    }
    Rng rng(seed);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t += (dist.family == SpacingDist::Family::exponential)
                 ? rng.exponential(dist.mean_h)
                 : rng.gamma(dist.shape_k, dist.mean_h);
        plan.times[i] = t;
    }
    return plan;
}

struct AliasFreeVerdict {
    bool alias_free = false;
    std::string diagnostic;
    std::optional<std::pair<double, double>> collision; ///< first pair found
};

/// Theorem-2 test: the sampling is alias-free iff phi takes no value twice
/// on the real axis. With phi(-w) = conj(phi(w)), injectivity over
/// [-Omega, Omega] reduces to (a) |phi| strictly decreasing on [0, Omega]
/// and (b) Im phi nonvanishing on (0, Omega]. A sign change of Im phi at
/// w* > 0 is an explicit collision with the conjugate branch,
/// phi(-w*) = phi(w*); it is located by bisection to the collision
/// tolerance 1e-6 / |phi'| ~ 1e-6 / h.
inline AliasFreeVerdict alias_free_check(const SpacingDist& dist) {
    dist.validate();
    const double h = dist.mean_h;
    const double omega_max = 100.0 / h;
    const std::size_t n = 200000;
    const double dw = omega_max / double(n);

    AliasFreeVerdict v;

    double prev_mag = 1.0; // phi(0) = 1
    double prev_im = 0.0;
    bool monotone = true;
    for (std::size_t i = 1; i <= n; ++i) {
        const double w = double(i) * dw;
        const cplx c = dist.characteristic(w);

        if (i > 1 && ((prev_im > 0.0 && c.imag() <= 0.0) || (prev_im < 0.0 && c.imag() >= 0.0)) &&
            std::abs(c) > 1e-9) {
            double a = w - dw, b = w;
            const double sa = prev_im;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double im = dist.characteristic(m).imag();
                if ((sa > 0.0) == (im > 0.0)) a = m; else b = m;
                if ((b - a) * h < 1e-9) break;
            }
            const double ws = 0.5 * (a + b);
            v.alias_free = false;
            v.collision = {-ws, ws};
            v.diagnostic = dist.name() + ": phi is real at w = " + std::to_string(ws) +
                           ", so phi(-w) = phi(w) — aliasing occurs";
            return v;
        }

        if (std::abs(c) >= prev_mag - 1e-15) monotone = false;
        prev_mag = std::abs(c);
        prev_im = c.imag();
    }

    if (!monotone) {
        v.alias_free = false;
        v.diagnostic = dist.name() + ": |phi| is not strictly decreasing; no collision pair "
                                     "resolved below tolerance within the scan range";
        return v;
    }

    v.alias_free = true;
    v.diagnostic = dist.name() + ": |phi| strictly decreasing and Im phi sign-definite on (0, " +
                   std::to_string(omega_max) + "]";
    return v;
}

} // namespace gsp::sampling
