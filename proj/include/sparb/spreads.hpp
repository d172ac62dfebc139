#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <string>

#include "sparb/date.hpp"
#include "sparb/errors.hpp"

namespace sparb {

inline constexpr int kHoursPerDay = 24;
inline constexpr int kSpreadCount = 276;  // C(24,2) hour pairs

/// One hour-pair spread: earlier delivery hour vs later delivery hour,
/// 0 <= earlier < later <= 23. The spread value is always
/// price[earlier] - price[later].
struct SpreadId {
    int earlier = 0;
    int later = 1;

    auto operator<=>(const SpreadId&) const = default;
};

/// Row-major upper-triangular ordinal: (0,1)->0, (0,2)->1, ..., (22,23)->275.
inline int spread_index(int earlier, int later) {
    if (earlier < 0 || later > kHoursPerDay - 1 || earlier >= later)
        throw parameter_error("invalid hour pair (" + std::to_string(earlier) + "," +
                              std::to_string(later) + ")");
    return earlier * 23 - earlier * (earlier - 1) / 2 + (later - earlier - 1);
}

inline int spread_index(const SpreadId& s) { return spread_index(s.earlier, s.later); }

inline SpreadId spread_hours(int ordinal) {
    if (ordinal < 0 || ordinal >= kSpreadCount)
        throw parameter_error("spread ordinal out of range: " + std::to_string(ordinal));
    int i = 0;
    int remaining = ordinal;
    while (remaining >= kHoursPerDay - 1 - i) {
        remaining -= kHoursPerDay - 1 - i;
        ++i;
    }
    return SpreadId{i, i + 1 + remaining};
}

/// 24 hourly day-ahead prices for one delivery day. Negative prices are legal.
struct HourlyPriceDay {
    Date date;
    std::array<double, kHoursPerDay> prices{};
};

inline void check_prices(const HourlyPriceDay& day) {
    for (double p : day.prices)
        if (!std::isfinite(p))
            throw parameter_error("non-finite price on " + format_date(day.date));
}

/// All 276 spread values of one day, ordered by spread_index.
struct SpreadVector {
    std::array<double, kSpreadCount> values{};

    double operator[](int ordinal) const { return values[static_cast<std::size_t>(ordinal)]; }
    double at(int earlier, int later) const {
        return values[static_cast<std::size_t>(spread_index(earlier, later))];
    }
};

inline SpreadVector compute_spreads(const HourlyPriceDay& day) {
    check_prices(day);
    SpreadVector out;
    int s = 0;
    for (int i = 0; i < kHoursPerDay; ++i)
        for (int j = i + 1; j < kHoursPerDay; ++j) out.values[s++] = day.prices[i] - day.prices[j];
    return out;
}

// Load_spread * mean(Load_i, Load_j) collapses to half the difference of squares.
inline double interaction_load(double load_i, double load_j) {
    return 0.5 * (load_i * load_i - load_j * load_j);
}

}  // namespace sparb
