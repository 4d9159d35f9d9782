#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "demandcast/core/aggregate.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/errors.hpp"
#include "demandcast/metrics.hpp"
#include "demandcast/models/design_matrix.hpp"
#include "demandcast/models/ols.hpp"
#include "demandcast/models/regressor_spec.hpp"

namespace demandcast::models {

/// The model ladder. Each kind extends the previous one by one regressor
/// group: FSE is the pure seasonal fit, FSET adds the temperature deviation,
/// FSETF adds the previous period's demand as a feedback term.
enum class ModelKind { FSE, FSET, FSETF };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::FSE: return "fse";
        case ModelKind::FSET: return "fset";
        case ModelKind::FSETF: return "fsetf";
    }
    return "?";
}

inline ModelKind parse_model_kind(std::string_view name) {
    std::string lower(name);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "fse") return ModelKind::FSE;
    if (lower == "fset") return ModelKind::FSET;
    if (lower == "fsetf") return ModelKind::FSETF;
    throw SpecViolation("unknown model kind '" + std::string(name) + "' (expected fse, fset or fsetf)");
}

/// Coefficients plus everything needed to rebuild regressor rows later: the
/// date of sample index zero, the bucket size, and the regressor recipe.
/// Forecasts made from a stored model and from the freshly fitted one are
/// identical because all phase information is pinned by time_origin.
struct FittedModel {
    ModelKind kind = ModelKind::FSE;
    RegressorSpec spec;
    Coefficients coefficients;
    core::Date time_origin;       // date of bucket 0, the t = 0 sample
    core::DateRange train_range;  // first and last day covered by training buckets
    core::Granularity granularity;
};

/// Predictions over consecutive buckets, optionally paired with observed
/// values and the error summary against them.
struct ForecastResult {
    std::vector<core::Date> dates;  // bucket start dates
    std::vector<double> predictions;
    std::optional<std::vector<double>> actuals;
    std::optional<metrics::MetricReport> report;

    void attach_actuals(std::span<const double> observed) {
        if (observed.size() != predictions.size()) {
            throw LengthMismatch("observed series has " + std::to_string(observed.size()) + " entries for " +
                                 std::to_string(predictions.size()) + " predictions");
        }
        actuals = std::vector<double>(observed.begin(), observed.end());
        report = metrics::evaluate(observed, predictions);
    }
};

namespace detail {

/// Days per bucket; the monthly length varies, so callers handling Monthly
/// must use calendar arithmetic instead of this constant.
inline long fixed_bucket_days(core::BucketKind kind) {
    return kind == core::BucketKind::Weekly ? 7 : 1;
}

inline core::Date bucket_last_day(core::BucketKind kind, core::Date start) {
    switch (kind) {
        case core::BucketKind::Daily: return start;
        case core::BucketKind::Weekly: return start + core::Days{6};
        case core::BucketKind::Monthly: return core::detail::first_of_next_month(start) - core::Days{1};
    }
    return start;
}

inline core::Date advance_buckets(core::BucketKind kind, core::Date start, long count) {
    if (kind == core::BucketKind::Monthly) {
        std::chrono::year_month_day ymd{start};
        const std::chrono::year_month ym = ymd.year() / ymd.month() + std::chrono::months{count};
        return core::Date{ym / std::chrono::day{1}};
    }
    return start + core::Days{count * fixed_bucket_days(kind)};
}

/// Bucket index of `when` on the grid anchored at `origin`. Dates that do
/// not fall on a bucket boundary are rejected: the trigonometric phase is
/// tied to the grid, and an off-grid start would silently shift it.
inline long bucket_index(core::BucketKind kind, core::Date origin, core::Date when) {
    if (kind == core::BucketKind::Monthly) {
        const std::chrono::year_month_day w{when};
        if (w.day() != std::chrono::day{1}) {
            throw SpecViolation("monthly forecasts must start on the first of a month, got " +
                                core::format_iso_date(when));
        }
        const std::chrono::year_month_day o{origin};
        return (12 * (int(w.year()) - int(o.year()))) + (int(unsigned(w.month())) - int(unsigned(o.month())));
    }
    const long days = (when - origin).count();
    const long len = fixed_bucket_days(kind);
    if (days % len != 0) {
        throw SpecViolation("date " + core::format_iso_date(when) + " is not aligned with the " +
                            std::to_string(len) + "-day bucket grid anchored at " + core::format_iso_date(origin));
    }
    return days / len;
}

/// Per-bucket mean temperature over `count` buckets starting at `start`.
/// The daily temperature series must cover every day of every bucket.
inline std::vector<double> bucket_temperature(const core::DailySeries* temperature, core::BucketKind kind,
                                              core::Date start, long count) {
    if (temperature == nullptr) {
        throw MissingTemperature("this model kind needs a temperature series");
    }
    const core::Date last_needed = bucket_last_day(kind, advance_buckets(kind, start, count - 1));
    if (!temperature->index_of(start) || !temperature->index_of(last_needed)) {
        throw MissingTemperature("temperature series '" + temperature->label() + "' does not cover " +
                                 core::format_iso_date(start) + ".." + core::format_iso_date(last_needed));
    }
    if (kind == core::BucketKind::Daily) {
        std::vector<double> out(static_cast<std::size_t>(count));
        const std::size_t first = *temperature->index_of(start);
        for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = (*temperature)[first + std::size_t(i)];
        return out;
    }
    const auto sliced = temperature->slice({start, last_needed});
    const auto bucketed = core::aggregate(sliced, {kind, core::BucketStat::Mean});
    return bucketed.values;
}

/// Observed demand over a run of buckets, reduced with the model's bucket
/// statistic. The daily series must cover the window exactly.
inline std::vector<double> bucket_demand_window(const core::DailySeries& demand, core::Granularity granularity,
                                                core::Date start, core::Date last_day, long expected) {
    if (!demand.index_of(start) || !demand.index_of(last_day)) {
        throw LengthMismatch("observed demand '" + demand.label() + "' does not cover " +
                             core::format_iso_date(start) + ".." + core::format_iso_date(last_day));
    }
    const auto bucketed = core::aggregate(demand.slice({start, last_day}), granularity);
    if (std::cmp_not_equal(bucketed.size(), expected)) {
        throw LengthMismatch("window " + core::format_iso_date(start) + ".." + core::format_iso_date(last_day) +
                             " yields " + std::to_string(bucketed.size()) + " buckets, expected " +
                             std::to_string(expected));
    }
    return bucketed.values;
}

/// Shrinks harmonic counts that a coarser sampling grid cannot carry. At
/// weekly resolution the within-week shape is gone entirely; on the annual
/// axis the count stays strictly below period/2, because at exactly two
/// samples per cycle the sine column vanishes at every grid point and the
/// fit degenerates.
inline void adapt_spec_to_granularity(RegressorSpec& spec, core::BucketKind kind) {
    if (kind == core::BucketKind::Daily) return;
    spec.annual_period = (kind == core::BucketKind::Weekly) ? 52.0 : 12.0;
    spec.weekly_harmonics = 0;
    const int max_annual = (static_cast<int>(spec.annual_period) - 1) / 2;
    spec.annual_harmonics = std::min(spec.annual_harmonics, max_annual);
    spec.modulated_harmonics = std::min(spec.modulated_harmonics, spec.annual_harmonics);
}

} // namespace detail

/// Fits one model of the ladder on every complete bucket that ends before
/// train_end. The temperature and lag switches in `spec` are overwritten
/// from `kind`; harmonic counts are adapted when the granularity is coarser
/// than daily. Training needs at least one full annual cycle of buckets and
/// enough rows to determine every coefficient.
inline FittedModel fit_model(ModelKind kind, const core::DailySeries& demand, const core::DailySeries* temperature,
                             RegressorSpec spec, core::Date train_end, core::Granularity granularity = {}) {
    spec.include_temperature = (kind != ModelKind::FSE);
    spec.include_lag = (kind == ModelKind::FSETF);
    detail::adapt_spec_to_granularity(spec, granularity.kind);
    spec.validate();

    const core::BucketedSeries bucketed = core::aggregate(demand, granularity);

    std::size_t n_train = 0;
    while (n_train < bucketed.size() &&
           detail::bucket_last_day(granularity.kind, bucketed.starts[n_train]) < train_end) {
        ++n_train;
    }
    const auto min_cycle = static_cast<std::size_t>(std::lround(spec.annual_period));
    if (n_train < min_cycle) {
        throw InsufficientHistory("training window before " + core::format_iso_date(train_end) + " has " +
                                  std::to_string(n_train) + " " + core::to_string(granularity.kind) +
                                  " buckets; one full annual cycle (" + std::to_string(min_cycle) + ") is required");
    }

    std::vector<double> temps;
    if (spec.include_temperature) {
        temps = detail::bucket_temperature(temperature, granularity.kind, bucketed.starts[0],
                                           static_cast<long>(n_train));
    }
    std::vector<double> lag;
    if (spec.include_lag) {
        lag.resize(n_train);
        lag[0] = std::numeric_limits<double>::quiet_NaN();  // nothing observed before the first bucket
        for (std::size_t r = 1; r < n_train; ++r) lag[r] = bucketed.values[r - 1];
    }

    const DesignMatrix design = build_design_matrix(spec, static_cast<Eigen::Index>(n_train), 0, temps, lag);
    if (static_cast<Eigen::Index>(n_train) - design.first_valid_row < design.cols()) {
        throw InsufficientHistory("training window has " + std::to_string(n_train - std::size_t(design.first_valid_row)) +
                                  " usable buckets for " + std::to_string(design.cols()) + " regressors");
    }

    Eigen::VectorXd targets(static_cast<Eigen::Index>(n_train));
    for (std::size_t i = 0; i < n_train; ++i) targets(static_cast<Eigen::Index>(i)) = bucketed.values[i];

    FittedModel model;
    model.kind = kind;
    model.spec = spec;
    model.coefficients = fit_least_squares(design, targets);
    model.time_origin = bucketed.starts[0];
    model.train_range = {bucketed.starts[0], detail::bucket_last_day(granularity.kind, bucketed.starts[n_train - 1])};
    model.granularity = granularity;
    return model;
}

/// Open-loop forecast: regressor rows are built from the calendar clock and
/// (for temperature models) a scenario temperature series; no demand values
/// enter. Lagged models cannot run open loop, ask for forecast_feedback.
inline ForecastResult forecast_horizon(const FittedModel& model, core::Date horizon_start, long n_periods,
                                       const core::DailySeries* scenario_temperature = nullptr) {
    if (model.kind == ModelKind::FSETF) {
        throw KindRequiresFeedback("this model feeds on previous-period demand; use forecast_feedback");
    }
    if (n_periods < 1) {
        throw SpecViolation("forecast horizon must cover at least one period");
    }
    const long t_offset = detail::bucket_index(model.granularity.kind, model.time_origin, horizon_start);
    if (t_offset < 0) {
        throw SpecViolation("horizon starts " + std::to_string(-t_offset) + " buckets before the model's time origin");
    }

    std::vector<double> temps;
    if (model.spec.include_temperature) {
        temps = detail::bucket_temperature(scenario_temperature, model.granularity.kind, horizon_start, n_periods);
    }

    const DesignMatrix rows = build_design_matrix(model.spec, n_periods, t_offset, temps, {});
    const Eigen::VectorXd pred = predict(rows, model.coefficients);

    ForecastResult out;
    out.dates.reserve(static_cast<std::size_t>(n_periods));
    out.predictions.reserve(static_cast<std::size_t>(n_periods));
    for (long i = 0; i < n_periods; ++i) {
        out.dates.push_back(detail::advance_buckets(model.granularity.kind, horizon_start, i));
        out.predictions.push_back(pred(i));
    }
    return out;
}

/// Day-ahead forecast loop for lagged models: the lag regressor of each
/// bucket is the observed demand of the bucket before it, never a model
/// output, so every prediction is exactly one step ahead of the data.
/// The observed series must cover the bucket before the horizon (the first
/// lag value) and the whole horizon (later lags and the error report).
/// Non-lagged models are forwarded to forecast_horizon and the observations
/// are only used for the report.
inline ForecastResult forecast_feedback(const FittedModel& model, const core::DailySeries& observed_demand,
                                        const core::DailySeries* temperature, core::Date horizon_start,
                                        long n_periods) {
    if (n_periods < 1) {
        throw SpecViolation("forecast horizon must cover at least one period");
    }
    const core::BucketKind bkind = model.granularity.kind;
    const long t_offset = detail::bucket_index(bkind, model.time_origin, horizon_start);

    const core::Date prev_start = detail::advance_buckets(bkind, horizon_start, -1);
    const core::Date last_day = detail::bucket_last_day(bkind, detail::advance_buckets(bkind, horizon_start, n_periods - 1));

    if (model.kind != ModelKind::FSETF) {
        ForecastResult out = forecast_horizon(model, horizon_start, n_periods, temperature);
        const auto actuals = detail::bucket_demand_window(observed_demand, model.granularity, horizon_start, last_day,
                                                          n_periods);
        out.attach_actuals(actuals);
        return out;
    }
    if (t_offset < 1) {
        throw MissingLagValue("horizon starts at or before the model's time origin; no observed demand exists for the first lag");
    }
    if (!observed_demand.index_of(prev_start)) {
        throw MissingLagValue("observed demand '" + observed_demand.label() + "' does not cover " +
                              core::format_iso_date(prev_start) + ", the bucket before the horizon");
    }
    if (!observed_demand.index_of(last_day)) {
        throw MissingLagValue("observed demand '" + observed_demand.label() + "' does not cover the horizon through " +
                              core::format_iso_date(last_day));
    }

    // n_periods + 1 buckets starting one bucket early: entry 0 seeds the
    // first lag, entries 1.. are the horizon's observed values.
    const auto window = detail::bucket_demand_window(observed_demand, model.granularity, prev_start,
                                                     last_day, n_periods + 1);

    std::vector<double> temps;
    if (model.spec.include_temperature) {
        temps = detail::bucket_temperature(temperature, bkind, horizon_start, n_periods);
    }
    std::vector<double> lag(window.begin(), window.end() - 1);

    const DesignMatrix rows = build_design_matrix(model.spec, n_periods, t_offset, temps, lag);
    const Eigen::VectorXd pred = predict(rows, model.coefficients);

    ForecastResult out;
    out.dates.reserve(static_cast<std::size_t>(n_periods));
    out.predictions.reserve(static_cast<std::size_t>(n_periods));
    for (long i = 0; i < n_periods; ++i) {
        out.dates.push_back(detail::advance_buckets(bkind, horizon_start, i));
        out.predictions.push_back(pred(i));
    }
    out.attach_actuals(std::span<const double>(window).subspan(1));
    return out;
}

/// One evaluated target year of a walk-forward run.
struct YearlyResult {
    int year = 0;
    FittedModel model;
    ForecastResult result;
};

/// Walk-forward evaluation by calendar year: for every target year, fit on
/// all complete buckets before the year's first bucket, then forecast every
/// bucket starting inside the year against the observed values. Lagged
/// models run in the day-ahead loop; temperature models see the observed
/// temperature over the horizon (the evaluation isolates model error, not
/// weather-forecast error).
inline std::vector<YearlyResult> rollover_evaluate(ModelKind kind, const core::DailySeries& demand,
                                                   const core::DailySeries* temperature, const RegressorSpec& spec,
                                                   int first_year, int last_year,
                                                   core::Granularity granularity = {}) {
    if (first_year > last_year) {
        throw SpecViolation("year range runs backwards");
    }
    const core::BucketedSeries bucketed = core::aggregate(demand, granularity);

    std::vector<YearlyResult> out;
    for (int year = first_year; year <= last_year; ++year) {
        std::size_t lo = 0;
        while (lo < bucketed.size() && core::year_of(bucketed.starts[lo]) < year) ++lo;
        std::size_t hi = lo;
        while (hi < bucketed.size() && core::year_of(bucketed.starts[hi]) == year) ++hi;
        if (lo == hi) {
            throw InsufficientHistory("no complete " + std::string(core::to_string(granularity.kind)) +
                                      " bucket starts in year " + std::to_string(year));
        }
        const core::Date horizon_start = bucketed.starts[lo];
        const long n_periods = static_cast<long>(hi - lo);

        YearlyResult yr;
        yr.year = year;
        try {
            yr.model = fit_model(kind, demand, temperature, spec, horizon_start, granularity);
        } catch (const InsufficientHistory& e) {
            throw InsufficientHistory("target year " + std::to_string(year) + ": " + e.what());
        }
        if (kind == ModelKind::FSETF) {
            yr.result = forecast_feedback(yr.model, demand, temperature, horizon_start, n_periods);
        } else {
            yr.result = forecast_horizon(yr.model, horizon_start, n_periods,
                                         kind == ModelKind::FSE ? nullptr : temperature);
            yr.result.attach_actuals(std::span<const double>(bucketed.values).subspan(lo, hi - lo));
        }
        out.push_back(std::move(yr));
    }
    return out;
}

} // namespace demandcast::models
