#pragma once

#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "demandcast/core/daily_series.hpp"

namespace demandcast::core {

enum class BucketKind { Daily, Weekly, Monthly };
enum class BucketStat { Mean, Sum };

struct Granularity {
    BucketKind kind = BucketKind::Daily;
    BucketStat statistic = BucketStat::Mean;
};

inline const char* to_string(BucketKind k) {
    switch (k) {
        case BucketKind::Daily: return "daily";
        case BucketKind::Weekly: return "weekly";
        case BucketKind::Monthly: return "monthly";
    }
    return "?";
}

inline const char* to_string(BucketStat s) { return s == BucketStat::Mean ? "mean" : "sum"; }

inline BucketKind parse_bucket_kind(std::string_view name) {
    if (name == "daily") return BucketKind::Daily;
    if (name == "weekly") return BucketKind::Weekly;
    if (name == "monthly") return BucketKind::Monthly;
    throw MalformedRow("unknown granularity '" + std::string(name) + "' (expected daily, weekly or monthly)");
}

inline BucketStat parse_bucket_stat(std::string_view name) {
    if (name == "mean") return BucketStat::Mean;
    if (name == "sum") return BucketStat::Sum;
    throw MalformedRow("unknown bucket statistic '" + std::string(name) + "' (expected mean or sum)");
}

/// One value per complete bucket. Weekly buckets are consecutive 7-day blocks
/// anchored at the source origin (not ISO weeks); monthly buckets are calendar
/// months fully covered by the source series. Partial buckets are dropped.
struct BucketedSeries {
    std::vector<Date> starts;
    std::vector<double> values;
    std::string label;
    Granularity granularity;

    std::size_t size() const { return values.size(); }
};

namespace detail {

inline double reduce_bucket(const std::vector<double>& v, std::size_t first, std::size_t len, BucketStat stat) {
    const double sum = std::accumulate(v.begin() + long(first), v.begin() + long(first + len), 0.0);
    return stat == BucketStat::Sum ? sum : sum / static_cast<double>(len);
}

inline Date first_of_month(Date d) {
    const std::chrono::year_month_day ymd{d};
    return Date{ymd.year() / ymd.month() / std::chrono::day{1}};
}

inline Date first_of_next_month(Date d) {
    std::chrono::year_month_day ymd{d};
    const std::chrono::year_month ym = ymd.year() / ymd.month();
    return Date{(ym + std::chrono::months{1}) / std::chrono::day{1}};
}

} // namespace detail

inline BucketedSeries aggregate(const DailySeries& s, Granularity g) {
    BucketedSeries out;
    out.label = s.label();
    out.granularity = g;

    switch (g.kind) {
        case BucketKind::Daily: {
            out.starts.reserve(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) out.starts.push_back(s.date_at(i));
            out.values = s.values();
            break;
        }
        case BucketKind::Weekly: {
            const std::size_t n_buckets = s.size() / 7;
            for (std::size_t b = 0; b < n_buckets; ++b) {
                out.starts.push_back(s.date_at(b * 7));
                out.values.push_back(detail::reduce_bucket(s.values(), b * 7, 7, g.statistic));
            }
            break;
        }
        case BucketKind::Monthly: {
            // walk complete calendar months inside the covered range
            Date cursor = detail::first_of_month(s.origin());
            if (cursor < s.origin()) cursor = detail::first_of_next_month(s.origin());
            while (true) {
                const Date next = detail::first_of_next_month(cursor);
                if (next - Days{1} > s.last_date()) break;
                const std::size_t first = *s.index_of(cursor);
                const std::size_t len = static_cast<std::size_t>((next - cursor).count());
                out.starts.push_back(cursor);
                out.values.push_back(detail::reduce_bucket(s.values(), first, len, g.statistic));
                cursor = next;
            }
            break;
        }
    }

    if (out.values.empty()) {
        throw EmptyAfterBucketing("series '" + s.label() + "' has no complete " +
                                  std::string(to_string(g.kind)) + " bucket");
    }
    return out;
}

} // namespace demandcast::core
