#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "sparb/densities.hpp"
#include "sparb/spreads.hpp"

namespace sparb {

/// Per-spread density forecasts for one trading day. A disengaged slot means
/// the spread was not forecast successfully; the optimizer skips it.
struct ForecastDay {
    Date date;
    std::array<std::optional<DensityParams>, kSpreadCount> entries;

    int populated_count() const {
        int n = 0;
        for (const auto& e : entries) n += e.has_value() ? 1 : 0;
        return n;
    }
};

/// Backtest-horizon forecasts, dates strictly increasing.
struct ForecastSet {
    std::vector<ForecastDay> days;
};

inline void check_forecast_set(const ForecastSet& set) {
    for (std::size_t t = 1; t < set.days.size(); ++t)
        if (!(set.days[t - 1].date < set.days[t].date))
            throw parameter_error("forecast dates must be strictly increasing");
}

/// Rolling moment estimator over the last `window` realized values of spread
/// `ordinal`. A stand-in for externally fitted models: emits a Normal with the
/// sample mean and n-1 standard deviation (floored at 1e-6).
inline DensityParams estimate_naive(const std::vector<SpreadVector>& history, int ordinal,
                                    int window) {
    if (window < 2) throw parameter_error("estimator window must be >= 2");
    if (static_cast<int>(history.size()) < window)
        throw parameter_error("history shorter than estimator window");
    if (ordinal < 0 || ordinal >= kSpreadCount)
        throw parameter_error("spread ordinal out of range");

    const std::size_t begin = history.size() - static_cast<std::size_t>(window);
    double sum = 0.0;
    for (std::size_t t = begin; t < history.size(); ++t) sum += history[t][ordinal];
    const double mu = sum / window;
    double ss = 0.0;
    for (std::size_t t = begin; t < history.size(); ++t) {
        const double d = history[t][ordinal] - mu;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / (window - 1));
    return normal_params(mu, std::max(sd, 1e-6));
}

inline double expected_spread(const DensityParams& params) { return mean(params); }

/// Naive forecasts for every day of a price series: day t uses the previous
/// `window` days; the first `window` days stay all-MISSING.
inline ForecastSet build_naive_forecasts(const std::vector<HourlyPriceDay>& prices, int window) {
    if (window < 2) throw parameter_error("estimator window must be >= 2");
    std::vector<SpreadVector> realized;
    realized.reserve(prices.size());
    for (const auto& day : prices) realized.push_back(compute_spreads(day));

    ForecastSet set;
    set.days.reserve(prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t) {
        ForecastDay day;
        day.date = prices[t].date;
        if (static_cast<int>(t) >= window) {
            std::vector<SpreadVector> past(realized.begin(), realized.begin() + t);
            for (int s = 0; s < kSpreadCount; ++s)
                day.entries[s] = estimate_naive(past, s, window);
        }
        set.days.push_back(std::move(day));
    }
    check_forecast_set(set);
    return set;
}

}  // namespace sparb
