#pragma once

// Seeded random source with an explicit Box-Muller normal so that sample
// streams are reproducible across standard libraries (std::normal_distribution
// is implementation-defined).

#include <cmath>
#include <cstdint>
#include <random>

namespace gsp {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on (0, 1).
    double uniform() {
        // 53-bit mantissa; offset keeps the value strictly positive.
        return (double(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairwise).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Exponential with the given mean.
    double exponential(double mean) { return -mean * std::log(uniform()); }

    /// Gamma with shape k >= 0.01 and given mean (Marsaglia-Tsang).
    double gamma(double shape, double mean) {
        const double scale = mean / shape;
        double k = shape;
        double boost = 1.0;
        if (k < 1.0) {
            boost = std::pow(uniform(), 1.0 / k);
            k += 1.0;
        }
        const double d = k - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return boost * d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return boost * d * v * scale;
        }
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gsp
