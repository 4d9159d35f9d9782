#pragma once

#include <array>
#include <charconv>
#include <chrono>
#include <string>
#include <string_view>

#include "demandcast/errors.hpp"

namespace demandcast::core {

/// All series are indexed by proleptic-Gregorian calendar days.
using Date = std::chrono::sys_days;
using Days = std::chrono::days;

/// Closed interval of calendar days: both endpoints belong to the range.
struct DateRange {
    Date start;
    Date end;

    bool contains(Date d) const { return d >= start && d <= end; }
    long length_days() const { return (end - start).count() + 1; }
};

namespace detail {
inline bool parse_fixed_uint(std::string_view text, int& out) {
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}
} // namespace detail

/// Parses a strict ISO-8601 `YYYY-MM-DD` date. Throws MalformedRow on any
/// deviation (wrong separators, short fields, impossible dates).
inline Date parse_iso_date(std::string_view text) {
    int y = 0, m = 0, d = 0;
    const bool shape_ok = text.size() == 10 && text[4] == '-' && text[7] == '-' &&
                          detail::parse_fixed_uint(text.substr(0, 4), y) &&
                          detail::parse_fixed_uint(text.substr(5, 2), m) &&
                          detail::parse_fixed_uint(text.substr(8, 2), d);
    if (!shape_ok) {
        throw MalformedRow("invalid ISO date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw MalformedRow("invalid calendar date '" + std::string(text) + "'");
    }
    return Date{ymd};
}

inline std::string format_iso_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];  // headroom beyond the 10 printed bytes keeps -Wformat-truncation quiet
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()));
    return std::string(buf);
}

inline Date make_date(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) {
        throw MalformedRow("invalid calendar date components");
    }
    return Date{ymd};
}

inline int year_of(Date date) { return int(std::chrono::year_month_day{date}.year()); }
inline unsigned month_of(Date date) { return unsigned(std::chrono::year_month_day{date}.month()); }

/// Weekday index in the C encoding used throughout: 0 = Sunday .. 6 = Saturday.
inline unsigned weekday_index(Date date) { return std::chrono::weekday{date}.c_encoding(); }

inline constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"};

inline std::string_view weekday_name(Date date) { return kWeekdayNames[weekday_index(date)]; }

/// Accepts full English weekday names or three-letter abbreviations,
/// case-insensitively. Returns the C encoding (0 = Sunday).
inline unsigned parse_weekday_name(std::string_view name) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    const std::string wanted = lower(name);
    for (unsigned i = 0; i < kWeekdayNames.size(); ++i) {
        const std::string full = lower(kWeekdayNames[i]);
        if (wanted == full || (wanted.size() == 3 && wanted == full.substr(0, 3))) return i;
    }
    throw MalformedRow("unknown weekday name '" + std::string(name) + "'");
}

} // namespace demandcast::core
