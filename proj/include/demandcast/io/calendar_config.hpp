#pragma once

#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "demandcast/core/calendar.hpp"
#include "demandcast/core/date.hpp"
#include "demandcast/errors.hpp"
#include "demandcast/io/csv.hpp"

namespace demandcast::io {

/// Reads a calendar description in `key = value` form. Recognised keys:
///
///   weekend_days      = Saturday, Sunday
///   holidays          = 2008-12-25, 2009-01-01
///   exclusion_windows = 2008-06-01..2008-06-14, 2009-01-05
///
/// Values are comma-separated lists; a key may repeat and its entries
/// accumulate. `#` starts a comment line. A file that never mentions
/// weekend_days keeps the Saturday/Sunday default, but one that does starts
/// from an empty weekend set so a deliberate single-day weekend is
/// expressible. A bare date in exclusion_windows is a one-day window.
inline core::CalendarConfig parse_calendar_config(std::istream& in) {
    core::CalendarConfig cal = core::CalendarConfig::defaults();
    bool weekend_seen = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        const std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw MalformedRow("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                               std::string(stripped) + "'");
        }
        const std::string_view key = detail::trim(stripped.substr(0, eq));
        const std::string_view value = detail::trim(stripped.substr(eq + 1));

        try {
            if (key == "weekend_days") {
                if (!weekend_seen) {
                    cal.weekend_days.fill(false);
                    weekend_seen = true;
                }
                for (const std::string_view item : detail::split_fields(value)) {
                    if (item.empty()) continue;
                    cal.weekend_days[core::parse_weekday_name(item)] = true;
                }
            } else if (key == "holidays") {
                for (const std::string_view item : detail::split_fields(value)) {
                    if (item.empty()) continue;
                    cal.holidays.insert(core::parse_iso_date(item));
                }
            } else if (key == "exclusion_windows") {
                for (const std::string_view item : detail::split_fields(value)) {
                    if (item.empty()) continue;
                    const std::size_t dots = item.find("..");
                    core::DateRange window{};
                    if (dots == std::string_view::npos) {
                        window.start = window.end = core::parse_iso_date(item);
                    } else {
                        window.start = core::parse_iso_date(detail::trim(item.substr(0, dots)));
                        window.end = core::parse_iso_date(detail::trim(item.substr(dots + 2)));
                    }
                    if (window.start > window.end) {
                        throw MalformedRow("window '" + std::string(item) + "' starts after it ends");
                    }
                    cal.exclusion_windows.push_back(window);
                }
            } else {
                throw MalformedRow("unknown key '" + std::string(key) + "'");
            }
        } catch (const MalformedRow& e) {
            throw MalformedRow("line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    cal.validate();
    return cal;
}

inline core::CalendarConfig parse_calendar_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    try {
        return parse_calendar_config(in);
    } catch (const Error& e) {
        throw MalformedRow(path + ": " + e.what());
    }
}

} // namespace demandcast::io
