#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sparb/date.hpp"
#include "sparb/forecast.hpp"
#include "sparb/rng.hpp"
#include "sparb/spreads.hpp"

namespace sparb {

/// Synthetic market generator: a double-hump intraday shape (morning and
/// evening peaks with an optional midday solar trough) plus iid hourly noise.
/// Because the noise is per-hour normal, the spread (i,j) is exactly
/// Normal(shape_i - shape_j, sqrt(sigma_i^2 + sigma_j^2)), which is what the
/// emitted forecast file contains: true generating densities, not fits.
struct SynthConfig {
    int days = 30;
    std::uint64_t seed = 0;
    Date start_date{2017, 1, 1};
    double base = 42.0;            // EUR/MWh level
    double morning_peak = 16.0;    // amplitude of the 08:30 hump
    double evening_peak = 22.0;    // amplitude of the 19:00 hump
    double trough_depth = 14.0;    // midday solar trough; 0 disables it
    double noise_sigma = 2.5;      // per-hour iid noise
    double amplitude_jitter = 0.3; // day-to-day amplitude scaling, U[1-a, 1+a]
};

struct SynthData {
    std::vector<HourlyPriceDay> prices;
    ForecastSet forecasts;
};

namespace detail {

inline double hump(double hour, double center, double width) {
    const double d = (hour - center) / width;
    return std::exp(-0.5 * d * d);
}

}  // namespace detail

inline SynthData generate_synthetic(const SynthConfig& cfg) {
    if (cfg.days < 1) throw parameter_error("synthetic day count must be >= 1");
    if (cfg.noise_sigma < 0.0) throw parameter_error("noise sigma must be >= 0");

    Rng rng(cfg.seed);
    SynthData data;
    data.prices.reserve(cfg.days);
    data.forecasts.days.reserve(cfg.days);

    const double spread_sigma = std::max(cfg.noise_sigma * std::sqrt(2.0), 1e-6);
    for (int d = 0; d < cfg.days; ++d) {
        const Date date = add_days(cfg.start_date, d);
        auto jitter = [&] { return 1.0 + cfg.amplitude_jitter * (2.0 * rng.uniform() - 1.0); };
        const double morning = cfg.morning_peak * jitter();
        const double evening = cfg.evening_peak * jitter();
        const double trough = cfg.trough_depth * jitter();
        const double level = cfg.base + 4.0 * (2.0 * rng.uniform() - 1.0);

        std::array<double, kHoursPerDay> shape{};
        for (int h = 0; h < kHoursPerDay; ++h) {
            const double hour = static_cast<double>(h);
            shape[h] = level + morning * detail::hump(hour, 8.5, 2.2) +
                       evening * detail::hump(hour, 19.0, 2.5) -
                       trough * detail::hump(hour, 13.5, 2.0);
        }

        HourlyPriceDay day{date, {}};
        for (int h = 0; h < kHoursPerDay; ++h)
            day.prices[h] = shape[h] + cfg.noise_sigma * rng.normal();
        data.prices.push_back(day);

        ForecastDay fc;
        fc.date = date;
        for (int i = 0; i < kHoursPerDay; ++i)
            for (int j = i + 1; j < kHoursPerDay; ++j)
                fc.entries[spread_index(i, j)] = normal_params(shape[i] - shape[j], spread_sigma);
        data.forecasts.days.push_back(std::move(fc));
    }
    return data;
}

}  // namespace sparb
