#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "sparb/errors.hpp"
#include "sparb/rng.hpp"

namespace sparb {

enum class Family { Normal, SkewT };

/// Forecast density of one price spread (EUR/MWh).
///
/// Normal uses (mu, sigma) only; nu and tau are carried but never read.
/// SkewT is the two-piece skew-t: a standard Student-t with tau degrees of
/// freedom whose halves are scaled by nu and 1/nu,
///
///   f(z) = 2*nu/(1+nu^2) * [ f_tau(z/nu)   for z >= 0
///                            f_tau(z*nu)   for z <  0 ],   y = mu + sigma*z.
///
/// nu > 1 skews right, nu < 1 skews left, nu = 1 recovers the Student-t.
/// tau > 1 is required throughout so the mean exists.
struct DensityParams {
    Family family = Family::Normal;
    double mu = 0.0;
    double sigma = 1.0;
    double nu = std::numeric_limits<double>::quiet_NaN();
    double tau = std::numeric_limits<double>::quiet_NaN();
};

inline DensityParams normal_params(double mu, double sigma) {
    return DensityParams{Family::Normal, mu, sigma,
                         std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN()};
}

inline DensityParams skewt_params(double mu, double sigma, double nu, double tau) {
    return DensityParams{Family::SkewT, mu, sigma, nu, tau};
}

inline void check_params(const DensityParams& p) {
    if (!std::isfinite(p.mu)) throw parameter_error("mu must be finite");
    if (!std::isfinite(p.sigma) || !(p.sigma > 0.0))
        throw parameter_error("sigma must be positive, got " + std::to_string(p.sigma));
    if (p.family == Family::SkewT) {
        if (!std::isfinite(p.nu) || !(p.nu > 0.0))
            throw parameter_error("nu must be positive, got " + std::to_string(p.nu));
        if (!std::isfinite(p.tau) || !(p.tau > 1.0))
            throw parameter_error("tau must exceed 1, got " + std::to_string(p.tau));
    }
}

namespace detail {

inline double student_t_pdf(double t, double tau) {
    return boost::math::pdf(boost::math::students_t(tau), t);
}
inline double student_t_cdf(double t, double tau) {
    return boost::math::cdf(boost::math::students_t(tau), t);
}
inline double student_t_quantile(double p, double tau) {
    return boost::math::quantile(boost::math::students_t(tau), p);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

// E|T_tau| = 2*sqrt(tau)*Gamma((tau+1)/2) / (sqrt(pi)*(tau-1)*Gamma(tau/2)), tau > 1
inline double student_t_abs_mean(double tau) {
    const double log_term =
        0.5 * std::log(tau) + std::lgamma(0.5 * (tau + 1.0)) - std::lgamma(0.5 * tau);
    return 2.0 * std::exp(log_term) / (std::sqrt(3.141592653589793238462643) * (tau - 1.0));
}

}  // namespace detail

inline double pdf(const DensityParams& p, double y) {
    check_params(p);
    const double z = (y - p.mu) / p.sigma;
    if (p.family == Family::Normal) {
        return std::exp(-0.5 * z * z) * 0.3989422804014326779 / p.sigma;
    }
    const double scale = 2.0 * p.nu / (1.0 + p.nu * p.nu);
    const double core =
        z >= 0.0 ? detail::student_t_pdf(z / p.nu, p.tau) : detail::student_t_pdf(z * p.nu, p.tau);
    return scale * core / p.sigma;
}

inline double cdf(const DensityParams& p, double y) {
    check_params(p);
    const double z = (y - p.mu) / p.sigma;
    if (p.family == Family::Normal) return detail::normal_cdf(z);
    const double nu2 = p.nu * p.nu;
    if (z < 0.0) return 2.0 / (1.0 + nu2) * detail::student_t_cdf(z * p.nu, p.tau);
    return 1.0 / (1.0 + nu2) +
           2.0 * nu2 / (1.0 + nu2) * (detail::student_t_cdf(z / p.nu, p.tau) - 0.5);
}

/// Inverse cdf. Exact location-scale form: returns mu + sigma * q_std(p).
inline double quantile(const DensityParams& p, double prob) {
    check_params(p);
    if (!(prob > 0.0) || !(prob < 1.0))
        throw parameter_error("quantile probability must lie in (0,1), got " +
                              std::to_string(prob));
    double z;
    if (p.family == Family::Normal) {
        z = boost::math::quantile(boost::math::normal(), prob);
    } else {
        const double nu2 = p.nu * p.nu;
        const double left_mass = 1.0 / (1.0 + nu2);
        if (prob < left_mass) {
            z = detail::student_t_quantile(prob * (1.0 + nu2) * 0.5, p.tau) / p.nu;
        } else {
            z = p.nu *
                detail::student_t_quantile(0.5 + (prob - left_mass) * (1.0 + nu2) / (2.0 * nu2),
                                           p.tau);
        }
    }
    return p.mu + p.sigma * z;
}

inline double mean(const DensityParams& p) {
    check_params(p);
    if (p.family == Family::Normal) return p.mu;
    if (!(p.tau > 1.0)) throw parameter_error("skew-t mean undefined for tau <= 1");
    return p.mu + p.sigma * detail::student_t_abs_mean(p.tau) * (p.nu - 1.0 / p.nu);
}

/// Monte-Carlo draws, deterministic for a given seed. Sampling goes through
/// Rng's t sampler plus the two-piece branch, not through quantile(), so it
/// can serve as an independent oracle for the cdf/quantile path.
inline std::vector<double> sample(const DensityParams& p, std::uint64_t seed, std::size_t n) {
    check_params(p);
    if (n < 1) throw parameter_error("sample count must be >= 1");
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    if (p.family == Family::Normal) {
        for (std::size_t k = 0; k < n; ++k) out.push_back(p.mu + p.sigma * rng.normal());
        return out;
    }
    const double nu2 = p.nu * p.nu;
    const double right_mass = nu2 / (1.0 + nu2);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::fabs(rng.student_t(p.tau));
        const double z = rng.uniform() < right_mass ? p.nu * t : -t / p.nu;
        out.push_back(p.mu + p.sigma * z);
    }
    return out;
}

}  // namespace sparb
