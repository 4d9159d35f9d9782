#pragma once

#include <array>
#include <set>
#include <vector>

#include "demandcast/core/date.hpp"

namespace demandcast::core {

/// Holiday dominates Weekend dominates Weekday.
enum class DayClass { Weekday, Weekend, Holiday };

inline const char* to_string(DayClass c) {
    switch (c) {
        case DayClass::Weekday: return "weekday";
        case DayClass::Weekend: return "weekend";
        case DayClass::Holiday: return "holiday";
    }
    return "?";
}

/// Calendar context for day classification. Holidays are an explicit date
/// list; nothing is inferred. Exclusion windows mark stretches whose days are
/// dropped from segregation statistics (closed intervals).
struct CalendarConfig {
    std::array<bool, 7> weekend_days{};  // indexed by C weekday encoding, 0 = Sunday
    std::set<Date> holidays;
    std::vector<DateRange> exclusion_windows;

    static CalendarConfig defaults() {
        CalendarConfig cal;
        cal.weekend_days[0] = true;  // Sunday
        cal.weekend_days[6] = true;  // Saturday
        return cal;
    }

    void validate() const {
        for (const DateRange& w : exclusion_windows) {
            if (w.start > w.end) {
                throw MalformedRow("exclusion window starts after it ends (" + format_iso_date(w.start) + ".." +
                                   format_iso_date(w.end) + ")");
            }
        }
    }
};

inline DayClass classify_day(Date date, const CalendarConfig& cal) {
    if (cal.holidays.count(date) != 0) return DayClass::Holiday;
    if (cal.weekend_days[weekday_index(date)]) return DayClass::Weekend;
    return DayClass::Weekday;
}

inline bool is_excluded(Date date, const CalendarConfig& cal) {
    for (const DateRange& w : cal.exclusion_windows) {
        if (w.contains(date)) return true;
    }
    return false;
}

} // namespace demandcast::core
