#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "demandcast/errors.hpp"
#include "demandcast/io/csv.hpp"
#include "demandcast/models/ar.hpp"
#include "demandcast/models/forecast.hpp"
#include "demandcast/synth.hpp"

namespace demandcast::io {

namespace detail {

/// Four decimals for human-facing tables; forecasts and coefficients use
/// the full 17-digit form instead because they get re-read by machines.
inline std::string table_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
}

inline void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
    for (const std::string& c : comments) {
        out << "# " << c << '\n';
    }
}

} // namespace detail

/// `date,prediction[,actual]` rows, one per forecast bucket. The actual
/// column appears only when observations were attached.
inline void write_forecast_csv(std::ostream& out, const models::ForecastResult& result,
                               const std::vector<std::string>& comments = {}) {
    detail::write_comments(out, comments);
    const bool with_actuals = result.actuals.has_value();
    out << (with_actuals ? "date,prediction,actual" : "date,prediction") << '\n';
    for (std::size_t i = 0; i < result.predictions.size(); ++i) {
        out << core::format_iso_date(result.dates[i]) << ',' << detail::format_value(result.predictions[i]);
        if (with_actuals) {
            out << ',' << detail::format_value((*result.actuals)[i]);
        }
        out << '\n';
    }
}

/// Error summary for one evaluated horizon. The invocation goes into a JSON
/// field because JSON has no comment syntax.
inline void write_metrics_json(std::ostream& out, const models::FittedModel& model,
                               const metrics::MetricReport& report, const std::string& invocation = {}) {
    nlohmann::json j;
    j["kind"] = models::to_string(model.kind);
    j["granularity"] = core::to_string(model.granularity.kind);
    j["mape_percent"] = report.mape_percent;
    j["rmse_percent"] = report.rmse_percent;
    j["train_range"] = {
        {"start", core::format_iso_date(model.train_range.start)},
        {"end", core::format_iso_date(model.train_range.end)},
    };
    if (!invocation.empty()) {
        j["invocation"] = invocation;
    }
    out << j.dump(2) << '\n';
}

/// Per-year autoregression weights, one row per refit: `year,lag1,...,lagp`.
inline void write_ar_table_csv(std::ostream& out, std::span<const models::ARYearlyResult> years,
                               const std::vector<std::string>& comments = {}) {
    detail::write_comments(out, comments);
    if (years.empty()) {
        throw SpecViolation("autoregression table needs at least one year");
    }
    out << "year";
    for (int j = 1; j <= years.front().model.order; ++j) {
        out << ",lag" << j;
    }
    out << '\n';
    for (const auto& yr : years) {
        out << yr.year;
        for (int j = 1; j <= yr.model.order; ++j) {
            out << ',' << detail::format_value(yr.model.coefficients.values(j));
        }
        out << '\n';
    }
}

/// Side-by-side walk-forward error table: one row per target year, the
/// regression model's errors first, the autoregression benchmark's after
/// (when one was run).
inline void write_comparison_csv(std::ostream& out, std::span<const models::YearlyResult> model_years,
                                 std::span<const models::ARYearlyResult> ar_years,
                                 const std::vector<std::string>& comments = {}) {
    detail::write_comments(out, comments);
    if (model_years.empty()) {
        throw SpecViolation("comparison table needs at least one year");
    }
    if (!ar_years.empty() && ar_years.size() != model_years.size()) {
        throw LengthMismatch("comparison table got " + std::to_string(model_years.size()) + " model years and " +
                             std::to_string(ar_years.size()) + " benchmark years");
    }
    const std::string kind = models::to_string(model_years.front().model.kind);
    out << "year," << kind << "_mape," << kind << "_rmse_pct";
    if (!ar_years.empty()) {
        out << ",ar_mape,ar_rmse_pct";
    }
    out << '\n';
    for (std::size_t i = 0; i < model_years.size(); ++i) {
        const auto& yr = model_years[i];
        if (!yr.result.report) {
            throw SpecViolation("year " + std::to_string(yr.year) + " has no error report attached");
        }
        out << yr.year << ',' << detail::table_value(yr.result.report->mape_percent) << ','
            << detail::table_value(yr.result.report->rmse_percent);
        if (!ar_years.empty()) {
            if (ar_years[i].year != yr.year || !ar_years[i].result.report) {
                throw LengthMismatch("benchmark years do not line up with model years");
            }
            out << ',' << detail::table_value(ar_years[i].result.report->mape_percent) << ','
                << detail::table_value(ar_years[i].result.report->rmse_percent);
        }
        out << '\n';
    }
}

/// One ratio across years and input series: rows are years, columns are the
/// series labels. A cell with no defined value (for the holiday ratio, a
/// summer without holidays) stays empty.
inline void write_ratio_table_csv(std::ostream& out, const std::vector<int>& years,
                                  const std::vector<std::string>& series_labels,
                                  const std::vector<std::vector<std::optional<double>>>& cells,
                                  const std::vector<std::string>& comments = {}) {
    detail::write_comments(out, comments);
    if (cells.size() != years.size()) {
        throw LengthMismatch("ratio table has " + std::to_string(cells.size()) + " rows for " +
                             std::to_string(years.size()) + " years");
    }
    out << "year";
    for (const std::string& label : series_labels) {
        out << ',' << label;
    }
    out << '\n';
    for (std::size_t r = 0; r < years.size(); ++r) {
        if (cells[r].size() != series_labels.size()) {
            throw LengthMismatch("ratio table row " + std::to_string(years[r]) + " has " +
                                 std::to_string(cells[r].size()) + " cells for " +
                                 std::to_string(series_labels.size()) + " series");
        }
        out << years[r];
        for (const auto& cell : cells[r]) {
            out << ',';
            if (cell) {
                out << detail::table_value(*cell);
            }
        }
        out << '\n';
    }
}

/// Sidecar for generated datasets: the full recipe plus the industrial
/// ratios it implies, so downstream checks can compare measured ratios
/// against ground truth. The ratio formulas take the base level as the
/// residential demand, which is exact whenever the seasonal terms vanish
/// over the window (the generator defaults keep summers that clean).
inline void write_generator_json(std::ostream& out, const synth::GeneratorSpec& spec,
                                 const std::string& invocation = {}) {
    nlohmann::json j;
    j["base_level"] = spec.base_level;
    j["trend_per_day"] = spec.trend_per_day;
    j["annual_amplitudes"] = spec.annual_amplitudes;
    j["weekly_amplitudes"] = spec.weekly_amplitudes;
    j["modulation_amplitudes"] = spec.modulation_amplitudes;
    j["temp_coefficient"] = spec.temp_coefficient;
    j["residual_ar_phi"] = spec.residual_ar_phi;
    j["noise_sigma"] = spec.noise_sigma;
    j["industrial_level"] = spec.industrial_level;
    j["weekend_industrial_fraction"] = spec.weekend_industrial_fraction;
    j["comfortable_temp"] = spec.comfortable_temp;
    j["temp_mean"] = spec.temp_mean;
    j["temp_annual_amplitude"] = spec.temp_annual_amplitude;
    j["temp_noise_sigma"] = spec.temp_noise_sigma;
    j["annual_period"] = spec.annual_period;
    j["weekly_period"] = spec.weekly_period;
    j["seed"] = spec.seed;

    const double industrial_weekend = spec.weekend_industrial_fraction * spec.industrial_level;
    j["true_ratio_holiday_percent"] = 100.0 * spec.industrial_level / spec.base_level;
    j["true_ratio_weekend_percent"] =
        100.0 * (spec.industrial_level - industrial_weekend) / (spec.base_level + industrial_weekend);
    if (!invocation.empty()) {
        j["invocation"] = invocation;
    }
    out << j.dump(2) << '\n';
}

namespace detail {

template <typename WriteBody>
inline void write_file(const std::string& path, WriteBody&& body) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    body(out);
    if (!out.flush()) {
        throw Error("failed writing '" + path + "'");
    }
}

} // namespace detail

inline void write_forecast_csv_file(const std::string& path, const models::ForecastResult& result,
                                    const std::vector<std::string>& comments = {}) {
    detail::write_file(path, [&](std::ostream& out) { write_forecast_csv(out, result, comments); });
}

inline void write_ar_table_csv_file(const std::string& path, std::span<const models::ARYearlyResult> years,
                                    const std::vector<std::string>& comments = {}) {
    detail::write_file(path, [&](std::ostream& out) { write_ar_table_csv(out, years, comments); });
}

inline void write_comparison_csv_file(const std::string& path, std::span<const models::YearlyResult> model_years,
                                      std::span<const models::ARYearlyResult> ar_years,
                                      const std::vector<std::string>& comments = {}) {
    detail::write_file(path, [&](std::ostream& out) { write_comparison_csv(out, model_years, ar_years, comments); });
}

inline void write_ratio_table_csv_file(const std::string& path, const std::vector<int>& years,
                                       const std::vector<std::string>& series_labels,
                                       const std::vector<std::vector<std::optional<double>>>& cells,
                                       const std::vector<std::string>& comments = {}) {
    detail::write_file(path, [&](std::ostream& out) { write_ratio_table_csv(out, years, series_labels, cells, comments); });
}

} // namespace demandcast::io
