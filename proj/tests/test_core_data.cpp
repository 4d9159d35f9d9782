#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <vector>

#include "demandcast/core/aggregate.hpp"
#include "demandcast/core/calendar.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/core/date.hpp"

using namespace demandcast;
using core::make_date;

TEST_CASE("ISO date parsing accepts strict form only", "[core][date]") {
    CHECK(core::parse_iso_date("2016-07-16") == make_date(2016, 7, 16));
    CHECK(core::parse_iso_date("2000-02-29") == make_date(2000, 2, 29));
    CHECK_THROWS_AS(core::parse_iso_date("2016-7-16"), MalformedRow);
    CHECK_THROWS_AS(core::parse_iso_date("2016/07/16"), MalformedRow);
    CHECK_THROWS_AS(core::parse_iso_date("2016-07-16 "), MalformedRow);
    CHECK_THROWS_AS(core::parse_iso_date("2015-02-29"), MalformedRow);
    CHECK_THROWS_AS(core::parse_iso_date("2016-13-01"), MalformedRow);
    CHECK_THROWS_AS(core::parse_iso_date(""), MalformedRow);
}

TEST_CASE("date formatting round-trips", "[core][date]") {
    for (const auto* text : {"1999-01-01", "2004-02-29", "2016-12-31", "0933-07-04"}) {
        CHECK(core::format_iso_date(core::parse_iso_date(text)) == text);
    }
}

TEST_CASE("weekday names parse in full and abbreviated form", "[core][date]") {
    CHECK(core::parse_weekday_name("Sunday") == 0);
    CHECK(core::parse_weekday_name("saturday") == 6);
    CHECK(core::parse_weekday_name("MON") == 1);
    CHECK(core::parse_weekday_name("fri") == 5);
    CHECK_THROWS_AS(core::parse_weekday_name("Noday"), MalformedRow);
    // calendar facts used throughout the calendar tests
    CHECK(core::weekday_index(make_date(2016, 7, 16)) == 6);  // Saturday
    CHECK(core::weekday_index(make_date(2016, 7, 13)) == 3);  // Wednesday
}

TEST_CASE("date ranges are closed intervals", "[core][date]") {
    const core::DateRange r{make_date(2016, 1, 1), make_date(2016, 1, 10)};
    CHECK(r.contains(r.start));
    CHECK(r.contains(r.end));
    CHECK_FALSE(r.contains(make_date(2015, 12, 31)));
    CHECK_FALSE(r.contains(make_date(2016, 1, 11)));
    CHECK(r.length_days() == 10);
}

TEST_CASE("daily series maps dates to entries", "[core][series]") {
    const core::DailySeries s(make_date(2016, 1, 1), {1.0, 2.0, 3.0}, "demo");
    CHECK(s.size() == 3);
    CHECK(s.date_at(0) == make_date(2016, 1, 1));
    CHECK(s.last_date() == make_date(2016, 1, 3));
    CHECK(s.index_of(make_date(2016, 1, 2)) == 1);
    CHECK_FALSE(s.index_of(make_date(2016, 1, 4)).has_value());
    CHECK(s.value_on(make_date(2016, 1, 3)) == 3.0);

    const auto sliced = s.slice({make_date(2016, 1, 2), make_date(2016, 1, 3)});
    CHECK(sliced.origin() == make_date(2016, 1, 2));
    CHECK(sliced.values() == std::vector<double>{2.0, 3.0});
    CHECK_THROWS_AS(s.slice({make_date(2016, 1, 2), make_date(2016, 1, 4)}), std::out_of_range);
}

TEST_CASE("daily series rejects empty and non-finite input", "[core][series]") {
    CHECK_THROWS_AS(core::DailySeries(make_date(2016, 1, 1), {}), std::invalid_argument);
    CHECK_THROWS_AS(core::DailySeries(make_date(2016, 1, 1), {1.0, std::nan("")}), NonFiniteValue);
}

TEST_CASE("day classification follows holiday over weekend over weekday", "[core][calendar]") {
    const auto cal = core::CalendarConfig::defaults();
    CHECK(core::classify_day(make_date(2016, 7, 16), cal) == core::DayClass::Weekend);  // a Saturday
    CHECK(core::classify_day(make_date(2016, 7, 13), cal) == core::DayClass::Weekday);  // a Wednesday

    auto holiday_cal = cal;
    holiday_cal.holidays.insert(make_date(2016, 7, 16));
    CHECK(core::classify_day(make_date(2016, 7, 16), holiday_cal) == core::DayClass::Holiday);
}

TEST_CASE("every date gets exactly one class", "[core][calendar]") {
    auto cal = core::CalendarConfig::defaults();
    cal.holidays.insert(make_date(2016, 3, 21));
    int counts[3] = {0, 0, 0};
    for (core::Date d = make_date(2016, 1, 1); d <= make_date(2016, 12, 31); d += core::Days{1}) {
        counts[static_cast<int>(core::classify_day(d, cal))] += 1;
    }
    CHECK(counts[0] + counts[1] + counts[2] == 366);  // 2016 is a leap year
    CHECK(counts[2] == 1);
}

TEST_CASE("exclusion windows cover their endpoints", "[core][calendar]") {
    auto cal = core::CalendarConfig::defaults();
    cal.exclusion_windows.push_back({make_date(2016, 6, 1), make_date(2016, 6, 3)});
    CHECK(core::is_excluded(make_date(2016, 6, 1), cal));
    CHECK(core::is_excluded(make_date(2016, 6, 3), cal));
    CHECK_FALSE(core::is_excluded(make_date(2016, 6, 4), cal));

    cal.exclusion_windows.push_back({make_date(2016, 7, 2), make_date(2016, 7, 1)});
    CHECK_THROWS_AS(cal.validate(), MalformedRow);
}

TEST_CASE("weekly aggregation keeps complete 7-day blocks", "[core][aggregate]") {
    const core::DailySeries two_weeks(make_date(2016, 1, 1), std::vector<double>(14, 10.0));
    const auto weekly = core::aggregate(two_weeks, {core::BucketKind::Weekly, core::BucketStat::Mean});
    CHECK(weekly.values == std::vector<double>{10.0, 10.0});
    CHECK(weekly.starts == std::vector<core::Date>{make_date(2016, 1, 1), make_date(2016, 1, 8)});

    const core::DailySeries ten_days(make_date(2016, 1, 1), std::vector<double>(10, 10.0));
    const auto partial = core::aggregate(ten_days, {core::BucketKind::Weekly, core::BucketStat::Mean});
    CHECK(partial.values == std::vector<double>{10.0});
}

TEST_CASE("monthly mean of 1..28 over one February", "[core][aggregate]") {
    std::vector<double> v(28);
    std::iota(v.begin(), v.end(), 1.0);
    // independent oracle: mean of an arithmetic run is (first + last) / 2
    const double expected = (1.0 + 28.0) / 2.0;
    REQUIRE(expected == 14.5);

    const core::DailySeries feb(make_date(2015, 2, 1), v);
    const auto monthly = core::aggregate(feb, {core::BucketKind::Monthly, core::BucketStat::Mean});
    REQUIRE(monthly.size() == 1);
    CHECK(monthly.starts[0] == make_date(2015, 2, 1));
    CHECK(monthly.values[0] == expected);
}

TEST_CASE("monthly aggregation drops partial edge months", "[core][aggregate]") {
    // Jan 15 2016 .. Mar 20 2016: only February is complete
    const long n = (make_date(2016, 3, 20) - make_date(2016, 1, 15)).count() + 1;
    const core::DailySeries s(make_date(2016, 1, 15), std::vector<double>(static_cast<size_t>(n), 2.0));
    const auto monthly = core::aggregate(s, {core::BucketKind::Monthly, core::BucketStat::Mean});
    REQUIRE(monthly.size() == 1);
    CHECK(monthly.starts[0] == make_date(2016, 2, 1));
    CHECK(monthly.values[0] == 2.0);

    const core::DailySeries short_series(make_date(2016, 1, 15), std::vector<double>(10, 2.0));
    CHECK_THROWS_AS(core::aggregate(short_series, {core::BucketKind::Monthly, core::BucketStat::Mean}),
                    EmptyAfterBucketing);
}

TEST_CASE("sum buckets equal length times mean buckets", "[core][aggregate]") {
    std::vector<double> v(90);
    for (size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * double(i)) + 2.0;
    const core::DailySeries s(make_date(2016, 1, 1), v);

    for (const auto kind : {core::BucketKind::Weekly, core::BucketKind::Monthly}) {
        const auto mean = core::aggregate(s, {kind, core::BucketStat::Mean});
        const auto sum = core::aggregate(s, {kind, core::BucketStat::Sum});
        REQUIRE(mean.size() == sum.size());
        for (size_t b = 0; b < mean.size(); ++b) {
            const core::Date next = (kind == core::BucketKind::Weekly)
                                        ? mean.starts[b] + core::Days{7}
                                        : core::detail::first_of_next_month(mean.starts[b]);
            const auto len = static_cast<double>((next - mean.starts[b]).count());
            CHECK_THAT(sum.values[b], Catch::Matchers::WithinRel(len * mean.values[b], 1e-12));
        }
    }
}

TEST_CASE("daily aggregation is the identity", "[core][aggregate]") {
    const core::DailySeries s(make_date(2016, 1, 1), {1.0, 2.0, 3.0});
    const auto daily = core::aggregate(s, {});
    CHECK(daily.values == s.values());
    CHECK(daily.starts.front() == s.origin());
    CHECK(daily.starts.back() == s.last_date());
}
