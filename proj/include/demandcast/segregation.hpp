#pragma once

#include <optional>
#include <string>
#include <vector>

#include "demandcast/core/calendar.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/errors.hpp"

namespace demandcast::segregation {

/// Mean demand by day class over one summer window, with the sample counts
/// behind each mean. Holiday is optional because many summers contain none.
struct SummerMeans {
    int year = 0;
    double weekday = 0.0;
    double weekend = 0.0;
    std::optional<double> holiday;
    std::size_t n_weekday = 0;
    std::size_t n_weekend = 0;
    std::size_t n_holiday = 0;
};

/// Averages demand per day class over the summer months of one year,
/// skipping days inside the calendar's exclusion windows. Summer is used
/// because space heating is idle then: what remains is the climate-
/// independent base, and the weekday/weekend/holiday steps in that base
/// expose the industrial share. Months are inclusive and default to
/// April through September.
inline SummerMeans seasonal_means(const core::DailySeries& demand, const core::CalendarConfig& cal, int year,
                                  unsigned first_month = 4, unsigned last_month = 9) {
    if (first_month < 1 || last_month > 12 || first_month > last_month) {
        throw SpecViolation("summer window months must satisfy 1 <= first <= last <= 12");
    }
    cal.validate();

    double sum[3] = {0.0, 0.0, 0.0};
    std::size_t count[3] = {0, 0, 0};

    const core::Date lo = core::make_date(year, first_month, 1);
    for (core::Date d = lo; core::year_of(d) == year && core::month_of(d) <= last_month; d += core::Days{1}) {
        const auto value = demand.value_on(d);
        if (!value || core::is_excluded(d, cal)) continue;
        const auto cls = static_cast<std::size_t>(core::classify_day(d, cal));
        sum[cls] += *value;
        count[cls] += 1;
    }

    const std::size_t wd = static_cast<std::size_t>(core::DayClass::Weekday);
    const std::size_t we = static_cast<std::size_t>(core::DayClass::Weekend);
    const std::size_t hol = static_cast<std::size_t>(core::DayClass::Holiday);
    if (count[wd] == 0 || count[we] == 0) {
        throw NoSummerData("summer " + std::to_string(year) + " has no usable " +
                           (count[wd] == 0 ? "weekday" : "weekend day") + " in series '" + demand.label() + "'");
    }

    SummerMeans out;
    out.year = year;
    out.weekday = sum[wd] / static_cast<double>(count[wd]);
    out.weekend = sum[we] / static_cast<double>(count[we]);
    out.n_weekday = count[wd];
    out.n_weekend = count[we];
    out.n_holiday = count[hol];
    if (count[hol] > 0) {
        out.holiday = sum[hol] / static_cast<double>(count[hol]);
    }
    return out;
}

/// Industrial share measured against holidays, in percent of residential
/// demand. On a summer holiday industry is shut and heating is idle, so the
/// holiday mean is the residential base; weekdays add the full industrial
/// load on top, making the ratio 100 * industrial / residential.
inline double industrial_ratio_holiday(double weekday_mean, double holiday_mean) {
    if (!(holiday_mean > 0.0)) {
        throw MissingHolidayMean("holiday mean demand must be strictly positive");
    }
    return 100.0 * (weekday_mean / holiday_mean - 1.0);
}

inline double industrial_ratio_holiday(const SummerMeans& means) {
    if (!means.holiday) {
        throw MissingHolidayMean("summer " + std::to_string(means.year) +
                                 " has no holiday inside the window; the holiday-based ratio is undefined");
    }
    return industrial_ratio_holiday(means.weekday, *means.holiday);
}

/// Industrial step measured against weekends, in percent. Weekends still
/// carry a reduced industrial load, so this understates the holiday-based
/// ratio; the gap between the two is itself informative (how much industry
/// keeps running on weekends).
inline double industrial_ratio_weekend(double weekday_mean, double weekend_mean) {
    if (!(weekend_mean > 0.0)) {
        throw ZeroMeanActual("weekend mean demand must be strictly positive");
    }
    return 100.0 * (weekday_mean / weekend_mean - 1.0);
}

inline double industrial_ratio_weekend(const SummerMeans& means) {
    return industrial_ratio_weekend(means.weekday, means.weekend);
}

/// One summer's means and ratios. The holiday ratio is absent rather than
/// an error when the window holds no holidays, so multi-year tables can
/// leave the cell empty.
struct SegregationReport {
    SummerMeans means;
    std::optional<double> ratio_holiday_percent;
    double ratio_weekend_percent = 0.0;
};

inline SegregationReport segregate_year(const core::DailySeries& demand, const core::CalendarConfig& cal, int year,
                                        unsigned first_month = 4, unsigned last_month = 9) {
    SegregationReport report;
    report.means = seasonal_means(demand, cal, year, first_month, last_month);
    if (report.means.holiday) {
        report.ratio_holiday_percent = industrial_ratio_holiday(report.means);
    }
    report.ratio_weekend_percent = industrial_ratio_weekend(report.means);
    return report;
}

inline std::vector<SegregationReport> segregate_years(const core::DailySeries& demand, const core::CalendarConfig& cal,
                                                      int first_year, int last_year, unsigned first_month = 4,
                                                      unsigned last_month = 9) {
    if (first_year > last_year) {
        throw SpecViolation("year range runs backwards");
    }
    std::vector<SegregationReport> out;
    for (int year = first_year; year <= last_year; ++year) {
        out.push_back(segregate_year(demand, cal, year, first_month, last_month));
    }
    return out;
}

} // namespace demandcast::segregation
