#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sparb {

/// Deterministic random source. Draws doubles straight from mt19937_64 bits
/// and uses fixed sampling algorithms (Box-Muller, Marsaglia-Tsang), so a
/// given seed reproduces the same stream on every platform -- unlike the
/// implementation-defined std::*_distribution adaptors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform on [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1]
    double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    // standard normal via Box-Muller (one variate per call, two uniforms)
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
    }

    // Gamma(shape, 1), shape > 0. Marsaglia-Tsang squeeze; shape < 1 boosted.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0);
            return g * std::pow(uniform_pos(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

    // standard Student-t with (real) dof > 0
    double student_t(double dof) {
        const double z = normal();
        const double g = chi_squared(dof);
        return z / std::sqrt(g / dof);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sparb
