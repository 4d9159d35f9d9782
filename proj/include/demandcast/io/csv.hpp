#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "demandcast/core/daily_series.hpp"
#include "demandcast/errors.hpp"

namespace demandcast::io {

/// Which CSV columns carry the date and the value, by header name.
struct ColumnSpec {
    std::string date_column = "date";
    std::string value_column = "value";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

inline double parse_double_field(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw MalformedRow("line " + std::to_string(line_no) + ": cannot parse value '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw NonFiniteValue("line " + std::to_string(line_no) + ": value '" + std::string(field) + "' is not finite");
    }
    return value;
}

/// 17 significant digits: the shortest fixed precision that survives a
/// text round-trip for every double.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

} // namespace detail

/// A date/value list as read from disk: sorted by date but possibly with
/// missing days. It must pass through align_and_fill (or be gap-free) to
/// become a DailySeries.
struct RawSeries {
    std::vector<core::Date> dates;
    std::vector<double> values;
    std::string label;

    struct Gap {
        core::Date first_missing;
        long length = 0;
    };

    /// Interior runs of missing days, in date order.
    std::vector<Gap> gaps() const {
        std::vector<Gap> out;
        for (std::size_t i = 1; i < dates.size(); ++i) {
            const long step = (dates[i] - dates[i - 1]).count();
            if (step > 1) {
                out.push_back({dates[i - 1] + core::Days{1}, step - 1});
            }
        }
        return out;
    }

    /// Converts to the gap-free container; refuses if any day is missing.
    core::DailySeries to_daily() const {
        const auto g = gaps();
        if (!g.empty()) {
            throw GapTooLarge("series '" + label + "' has a gap of " + std::to_string(g.front().length) +
                              " days starting " + core::format_iso_date(g.front().first_missing) +
                              "; fill gaps before converting");
        }
        return core::DailySeries(dates.front(), values, label);
    }
};

/// Reads a `date,value` CSV. Lines starting with `#` and blank lines are
/// skipped anywhere in the file; the first remaining line must be a header
/// naming both configured columns. Rows may arrive in any order and are
/// sorted; the same date twice is an error. Reported line numbers are
/// physical file lines, counting comments.
inline RawSeries parse_series_csv(std::istream& in, const ColumnSpec& columns = {}, std::string label = "") {
    RawSeries out;
    out.label = std::move(label);

    std::string line;
    std::size_t line_no = 0;
    long date_idx = -1;
    long value_idx = -1;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        const auto fields = detail::split_fields(stripped);
        if (date_idx < 0) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == columns.date_column) date_idx = static_cast<long>(i);
                if (fields[i] == columns.value_column) value_idx = static_cast<long>(i);
            }
            if (date_idx < 0 || value_idx < 0) {
                throw MalformedRow("line " + std::to_string(line_no) + ": header lacks column '" +
                                   (date_idx < 0 ? columns.date_column : columns.value_column) + "'");
            }
            continue;
        }

        const auto needed = static_cast<std::size_t>(std::max(date_idx, value_idx)) + 1;
        if (fields.size() < needed) {
            throw MalformedRow("line " + std::to_string(line_no) + ": expected at least " + std::to_string(needed) +
                               " fields, got " + std::to_string(fields.size()));
        }
        core::Date date;
        try {
            date = core::parse_iso_date(fields[static_cast<std::size_t>(date_idx)]);
        } catch (const MalformedRow& e) {
            throw MalformedRow("line " + std::to_string(line_no) + ": " + e.what());
        }
        out.dates.push_back(date);
        out.values.push_back(detail::parse_double_field(fields[static_cast<std::size_t>(value_idx)], line_no));
    }

    if (date_idx < 0) {
        throw MalformedRow("input has no header row");
    }
    if (out.dates.empty()) {
        throw MalformedRow("input has no data rows");
    }

    std::vector<std::size_t> order(out.dates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.dates[a] < out.dates[b]; });

    RawSeries sorted;
    sorted.label = out.label;
    sorted.dates.reserve(order.size());
    sorted.values.reserve(order.size());
    for (const std::size_t i : order) {
        if (!sorted.dates.empty() && sorted.dates.back() == out.dates[i]) {
            throw DuplicateDate("date " + core::format_iso_date(out.dates[i]) + " appears more than once");
        }
        sorted.dates.push_back(out.dates[i]);
        sorted.values.push_back(out.values[i]);
    }
    return sorted;
}

inline RawSeries parse_series_csv_file(const std::string& path, const ColumnSpec& columns = {},
                                       std::string label = "") {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    if (label.empty()) label = path;
    try {
        return parse_series_csv(in, columns, std::move(label));
    } catch (const Error& e) {
        throw MalformedRow(path + ": " + e.what());
    }
}

/// Writes a series in the same format parse_series_csv reads. Values carry
/// 17 significant digits so a parse of the output reproduces the series
/// bit for bit. Each comment line is emitted before the header with a
/// leading `# `.
inline void write_series_csv(std::ostream& out, const core::DailySeries& series, const ColumnSpec& columns = {},
                             const std::vector<std::string>& comments = {}) {
    for (const std::string& c : comments) {
        out << "# " << c << '\n';
    }
    out << columns.date_column << ',' << columns.value_column << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << core::format_iso_date(series.date_at(i)) << ',' << detail::format_value(series[i]) << '\n';
    }
}

inline void write_series_csv_file(const std::string& path, const core::DailySeries& series,
                                  const ColumnSpec& columns = {}, const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    write_series_csv(out, series, columns, comments);
    if (!out.flush()) {
        throw Error("failed writing '" + path + "'");
    }
}

namespace detail {

/// Materialises one raw series over [lo, hi], interpolating missing days
/// linearly between their observed neighbors. A missing run longer than
/// max_gap is a hard error; the neighbors may lie outside [lo, hi], and the
/// run length is always the full observed-neighbor distance.
inline std::vector<double> fill_range(const RawSeries& s, core::Date lo, core::Date hi, long max_gap) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>((hi - lo).count()) + 1);

    std::size_t next = 0;  // first observation with date >= cursor
    while (next < s.dates.size() && s.dates[next] < lo) ++next;

    for (core::Date d = lo; d <= hi; d += core::Days{1}) {
        if (next < s.dates.size() && s.dates[next] == d) {
            out.push_back(s.values[next]);
            ++next;
            continue;
        }
        // d sits strictly between observations next-1 and next
        const core::Date left_date = s.dates[next - 1];
        const core::Date right_date = s.dates[next];
        const long run = (right_date - left_date).count() - 1;
        if (run > max_gap) {
            throw GapTooLarge("series '" + s.label + "' is missing " + std::to_string(run) + " days starting " +
                              core::format_iso_date(left_date + core::Days{1}) + "; the fill limit is " +
                              std::to_string(max_gap) + " days");
        }
        const double span = static_cast<double>((right_date - left_date).count());
        const double frac = static_cast<double>((d - left_date).count()) / span;
        out.push_back(s.values[next - 1] + (s.values[next] - s.values[next - 1]) * frac);
    }
    return out;
}

} // namespace detail

/// Restricts both series to the date range they share and fills interior
/// gaps of at most max_gap days by linear interpolation. The result is a
/// pair of gap-free series on an identical date axis, ready for fitting.
inline std::pair<core::DailySeries, core::DailySeries> align_and_fill(const RawSeries& demand,
                                                                     const RawSeries& temperature,
                                                                     long max_gap = 3) {
    if (demand.dates.empty() || temperature.dates.empty()) {
        throw NoOverlap("align_and_fill needs two nonempty series");
    }
    const core::Date lo = std::max(demand.dates.front(), temperature.dates.front());
    const core::Date hi = std::min(demand.dates.back(), temperature.dates.back());
    if (lo > hi) {
        throw NoOverlap("series '" + demand.label + "' (" + core::format_iso_date(demand.dates.front()) + ".." +
                        core::format_iso_date(demand.dates.back()) + ") and '" + temperature.label + "' (" +
                        core::format_iso_date(temperature.dates.front()) + ".." +
                        core::format_iso_date(temperature.dates.back()) + ") share no dates");
    }
    return {
        core::DailySeries(lo, detail::fill_range(demand, lo, hi, max_gap), demand.label),
        core::DailySeries(lo, detail::fill_range(temperature, lo, hi, max_gap), temperature.label),
    };
}

} // namespace demandcast::io
