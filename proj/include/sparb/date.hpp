#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>

#include "sparb/errors.hpp"

namespace sparb {

// Calendar day. Ordering is field-wise, which matches chronological order.
struct Date {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31

    auto operator<=>(const Date&) const = default;
};

namespace detail {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
inline std::int64_t days_from_civil(int y, int m, int d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline Date civil_from_days(std::int64_t z) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

}  // namespace detail

inline std::int64_t to_serial_day(const Date& d) noexcept {
    return detail::days_from_civil(d.year, d.month, d.day);
}

inline Date add_days(const Date& d, std::int64_t n) noexcept {
    return detail::civil_from_days(to_serial_day(d) + n);
}

inline bool is_valid_date(const Date& d) noexcept {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    // round-trip through the serial day catches day-of-month overflow
    return detail::civil_from_days(to_serial_day(d)) == d;
}

inline std::string format_date(const Date& d) {
    char buf[11];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return std::string(buf);
}

// Strict ISO-8601 YYYY-MM-DD.
inline Date parse_date(std::string_view text, std::size_t line = 0) {
    auto fail = [&]() -> Date {
        throw parse_error("invalid date '" + std::string(text) + "', expected YYYY-MM-DD", line);
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return fail();
    Date d;
    auto num = [&](std::size_t pos, std::size_t len, int& out) {
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        return ec == std::errc() && ptr == text.data() + pos + len;
    };
    if (!num(0, 4, d.year) || !num(5, 2, d.month) || !num(8, 2, d.day)) return fail();
    if (!is_valid_date(d)) return fail();
    return d;
}

}  // namespace sparb
