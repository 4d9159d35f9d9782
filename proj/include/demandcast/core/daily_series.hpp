#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demandcast/core/date.hpp"

namespace demandcast::core {

/// A gap-free run of daily values starting at `origin`. Entry `i` belongs to
/// calendar day `origin + i`; there is no way to represent a missing day.
/// Instances are immutable once constructed and safe to share across threads.
class DailySeries {
public:
    DailySeries(Date origin, std::vector<double> values, std::string label = "")
        : origin_(origin), values_(std::move(values)), label_(std::move(label)) {
        if (values_.empty()) {
            throw std::invalid_argument("DailySeries requires at least one value");
        }
        for (double v : values_) {
            if (!std::isfinite(v)) {
                throw NonFiniteValue("DailySeries '" + label_ + "' contains a non-finite value");
            }
        }
    }

    Date origin() const { return origin_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }

    double operator[](std::size_t i) const { return values_[i]; }
    Date date_at(std::size_t i) const { return origin_ + Days{static_cast<long>(i)}; }
    Date last_date() const { return date_at(size() - 1); }
    DateRange range() const { return {origin_, last_date()}; }

    std::optional<std::size_t> index_of(Date d) const {
        const long offset = (d - origin_).count();
        if (offset < 0 || offset >= static_cast<long>(values_.size())) return std::nullopt;
        return static_cast<std::size_t>(offset);
    }

    std::optional<double> value_on(Date d) const {
        const auto idx = index_of(d);
        if (!idx) return std::nullopt;
        return values_[*idx];
    }

    /// Contiguous slice covering `r`; throws if the series does not cover it.
    DailySeries slice(DateRange r) const {
        const auto lo = index_of(r.start);
        const auto hi = index_of(r.end);
        if (!lo || !hi || *lo > *hi) {
            throw std::out_of_range("slice range [" + format_iso_date(r.start) + ", " + format_iso_date(r.end) +
                                    "] not covered by series '" + label_ + "'");
        }
        return DailySeries(r.start, std::vector<double>(values_.begin() + long(*lo), values_.begin() + long(*hi) + 1),
                           label_);
    }

private:
    Date origin_;
    std::vector<double> values_;
    std::string label_;
};

} // namespace demandcast::core
