#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "sparb/forecast.hpp"
#include "sparb/spreads.hpp"

namespace sparb {

// Canonical number format: shortest decimal that round-trips the double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, std::size_t line) {
    double v{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw parse_error("invalid number '" + std::string(text) + "'", line);
    return v;
}

inline int parse_int(std::string_view text, std::size_t line) {
    int v{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw parse_error("invalid integer '" + std::string(text) + "'", line);
    return v;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k) {
        if (k == line.size() || line[k] == ',') {
            fields.push_back(line.substr(start, k - start));
            start = k + 1;
        }
    }
    return fields;
}

namespace detail {

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// forecast parameter file: date,hour_i,hour_j,family,mu,sigma,nu,tau
// ---------------------------------------------------------------------------

inline ForecastSet load_forecasts(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) return ForecastSet{};  // empty file -> empty set
    ++lineno;
    if (detail::strip_cr(line) != "date,hour_i,hour_j,family,mu,sigma,nu,tau")
        throw parse_error("bad forecast header '" + line + "'", lineno);

    std::map<Date, ForecastDay> by_date;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = detail::strip_cr(line);
        if (text.empty()) continue;
        const auto f = split_csv(text);
        if (f.size() != 8) throw parse_error("expected 8 fields, got " + std::to_string(f.size()), lineno);

        const Date date = parse_date(f[0], lineno);
        const int hour_i = parse_int(f[1], lineno);
        const int hour_j = parse_int(f[2], lineno);
        int ordinal;
        try {
            ordinal = spread_index(hour_i, hour_j);
        } catch (const parameter_error& e) {
            throw parse_error(e.what(), lineno);
        }

        DensityParams params;
        if (f[3] == "normal")
            params.family = Family::Normal;
        else if (f[3] == "skewt")
            params.family = Family::SkewT;
        else
            throw parse_error("unknown family '" + std::string(f[3]) + "'", lineno);
        params.mu = parse_double(f[4], lineno);
        params.sigma = parse_double(f[5], lineno);
        if (params.family == Family::Normal) {
            params.nu = f[6].empty() ? std::numeric_limits<double>::quiet_NaN()
                                     : parse_double(f[6], lineno);
            params.tau = f[7].empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : parse_double(f[7], lineno);
        } else {
            params.nu = parse_double(f[6], lineno);
            params.tau = parse_double(f[7], lineno);
        }
        check_params(params);

        auto& day = by_date[date];
        day.date = date;
        if (day.entries[ordinal])
            throw conflict_error("duplicate forecast row for " + format_date(date) + " hours " +
                                 std::to_string(hour_i) + "-" + std::to_string(hour_j));
        day.entries[ordinal] = params;
    }

    ForecastSet set;
    set.days.reserve(by_date.size());
    for (auto& [date, day] : by_date) set.days.push_back(std::move(day));
    return set;
}

inline ForecastSet load_forecasts(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open forecast file: " + path.string());
    return load_forecasts(in);
}

// Rows ordered by (date, spread ordinal); numbers in canonical shortest form.
inline void write_forecasts(std::ostream& out, const ForecastSet& set) {
    out << "date,hour_i,hour_j,family,mu,sigma,nu,tau\n";
    for (const auto& day : set.days) {
        for (int s = 0; s < kSpreadCount; ++s) {
            const auto& entry = day.entries[s];
            if (!entry) continue;
            const SpreadId id = spread_hours(s);
            out << format_date(day.date) << ',' << id.earlier << ',' << id.later << ','
                << (entry->family == Family::Normal ? "normal" : "skewt") << ','
                << format_double(entry->mu) << ',' << format_double(entry->sigma) << ',';
            if (std::isnan(entry->nu))
                out << ',';
            else
                out << format_double(entry->nu) << ',';
            if (!std::isnan(entry->tau)) out << format_double(entry->tau);
            out << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// hourly price file: date,hour,price_eur_mwh (24 rows per date)
// ---------------------------------------------------------------------------

inline std::vector<HourlyPriceDay> load_prices(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) return {};
    ++lineno;
    if (detail::strip_cr(line) != "date,hour,price_eur_mwh")
        throw parse_error("bad price header '" + line + "'", lineno);

    std::vector<HourlyPriceDay> days;
    std::array<bool, kHoursPerDay> seen{};
    auto finish_day = [&](std::size_t at_line) {
        if (days.empty()) return;
        for (int h = 0; h < kHoursPerDay; ++h)
            if (!seen[h])
                throw parse_error("missing hour " + std::to_string(h) + " for " +
                                      format_date(days.back().date),
                                  at_line);
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto text = detail::strip_cr(line);
        if (text.empty()) continue;
        const auto f = split_csv(text);
        if (f.size() != 3)
            throw parse_error("expected 3 fields, got " + std::to_string(f.size()), lineno);
        const Date date = parse_date(f[0], lineno);
        const int hour = parse_int(f[1], lineno);
        if (hour < 0 || hour >= kHoursPerDay)
            throw parse_error("hour out of range: " + std::to_string(hour), lineno);
        const double price = parse_double(f[2], lineno);
        if (!std::isfinite(price)) throw parse_error("non-finite price", lineno);

        if (days.empty() || days.back().date != date) {
            finish_day(lineno);
            if (!days.empty() && !(days.back().date < date))
                throw parse_error("dates must be strictly increasing", lineno);
            days.push_back(HourlyPriceDay{date, {}});
            seen.fill(false);
        }
        if (seen[hour])
            throw parse_error("duplicate hour " + std::to_string(hour) + " for " +
                                  format_date(date),
                              lineno);
        days.back().prices[hour] = price;
        seen[hour] = true;
    }
    finish_day(lineno + 1);
    return days;
}

inline std::vector<HourlyPriceDay> load_prices(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open price file: " + path.string());
    return load_prices(in);
}

inline void write_prices(std::ostream& out, const std::vector<HourlyPriceDay>& days) {
    out << "date,hour,price_eur_mwh\n";
    for (const auto& day : days)
        for (int h = 0; h < kHoursPerDay; ++h)
            out << format_date(day.date) << ',' << h << ',' << format_double(day.prices[h])
                << '\n';
}

// ---------------------------------------------------------------------------

// Write via a temp file in the target directory, then rename into place.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sparb
