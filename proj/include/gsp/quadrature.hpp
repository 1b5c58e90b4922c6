#pragma once

// Adaptive Gauss quadrature. Nodes and weights of the Legendre rules are
// generated at first use by Newton iteration on P_n, so no tabulated
// constants enter the build. Error control compares the 10- and 20-point
// rules on each panel and bisects until the requested tolerance is met.

#include <cmath>
#include <functional>
#include <vector>

#include "gsp/errors.hpp"

namespace gsp::quad {

namespace detail {

struct Rule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Legendre polynomial value and derivative by recurrence.
inline void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    p = (n == 0) ? 1.0 : (n == 1 ? x : p1);
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

inline Rule make_rule(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p, dp;
        legendre(n, x, p, dp);
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

inline const Rule& rule10() {
    static const Rule r = make_rule(10);
    return r;
}
inline const Rule& rule20() {
    static const Rule r = make_rule(20);
    return r;
}

template <class F>
double apply(const Rule& r, F&& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * f(c + h * r.nodes[i]);
    return h * sum;
}

template <class F>
double adaptive(F&& f, double a, double b, double abs_tol, double rel_tol, int depth) {
    const double coarse = apply(rule10(), f, a, b);
    const double fine = apply(rule20(), f, a, b);
    const double err = std::abs(fine - coarse);
    if (err <= abs_tol || err <= rel_tol * std::abs(fine) || depth > 48)
        return fine;
    const double m = 0.5 * (a + b);
    return adaptive(f, a, m, abs_tol / 2, rel_tol, depth + 1) +
           adaptive(f, m, b, abs_tol / 2, rel_tol, depth + 1);
}

} // namespace detail

/// Integrate f over [a, b] to the given tolerances. The interval is split
/// into a fixed number of initial panels before adaptive bisection so that
/// narrow features cannot slip between the nodes of a single coarse rule.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10, double rel_tol = 1e-12) {
    if (a == b) return 0.0;
    constexpr int kInitialPanels = 8;
    const double h = (b - a) / kInitialPanels;
    double sum = 0.0;
    for (int i = 0; i < kInitialPanels; ++i)
        sum += detail::adaptive(f, a + i * h, a + (i + 1) * h, abs_tol / kInitialPanels, rel_tol, 0);
    return sum;
}

} // namespace gsp::quad
