#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "demandcast/core/aggregate.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/errors.hpp"
#include "demandcast/models/forecast.hpp"
#include "demandcast/models/ols.hpp"

namespace demandcast::models {

/// Partial autocorrelations at lags 1..max_lag via the Durbin-Levinson
/// recursion on sample autocovariances. The value at lag k is the last
/// coefficient of the best linear predictor using k lags, which is the
/// standard order-selection diagnostic for autoregressions.
inline std::vector<double> pacf(std::span<const double> series, int max_lag) {
    if (max_lag < 1) {
        throw SpecViolation("pacf needs max_lag >= 1");
    }
    const std::size_t n = series.size();
    if (n <= static_cast<std::size_t>(max_lag) + 1) {
        throw SeriesTooShort("pacf at lag " + std::to_string(max_lag) + " needs more than " +
                             std::to_string(max_lag + 1) + " points, got " + std::to_string(n));
    }

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) {
            acc += (series[t] - mean) * (series[t - static_cast<std::size_t>(k)] - mean);
        }
        gamma[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    if (!(gamma[0] > 0.0)) {
        throw SpecViolation("series has zero variance; partial autocorrelations are undefined");
    }

    std::vector<double> out(static_cast<std::size_t>(max_lag));
    std::vector<double> phi_prev(static_cast<std::size_t>(max_lag) + 1, 0.0);
    std::vector<double> phi_cur(static_cast<std::size_t>(max_lag) + 1, 0.0);

    phi_prev[1] = gamma[1] / gamma[0];
    out[0] = phi_prev[1];
    double v = gamma[0] * (1.0 - phi_prev[1] * phi_prev[1]);

    for (int k = 2; k <= max_lag; ++k) {
        double num = gamma[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j)] * gamma[static_cast<std::size_t>(k - j)];
        }
        const double phi_kk = num / v;
        phi_cur[static_cast<std::size_t>(k)] = phi_kk;
        for (int j = 1; j < k; ++j) {
            phi_cur[static_cast<std::size_t>(j)] =
                phi_prev[static_cast<std::size_t>(j)] - phi_kk * phi_prev[static_cast<std::size_t>(k - j)];
        }
        out[static_cast<std::size_t>(k - 1)] = phi_kk;
        v *= 1.0 - phi_kk * phi_kk;
        std::swap(phi_prev, phi_cur);
    }
    return out;
}

/// An autoregression y_t = c + phi_1 y_{t-1} + ... + phi_p y_{t-p} + e_t.
/// Coefficient labels run const, lag1 .. lagp in that order. fit_range
/// records the dates behind the fit when the model came from a dated
/// series; a fit on a bare vector leaves it empty.
struct ARModel {
    int order = 0;
    Coefficients coefficients;
    core::DateRange fit_range{};

    double intercept() const { return coefficients.values(0); }

    std::vector<double> lag_coefficients() const {
        std::vector<double> out(static_cast<std::size_t>(order));
        for (int j = 1; j <= order; ++j) out[static_cast<std::size_t>(j - 1)] = coefficients.values(j);
        return out;
    }
};

/// Fits the autoregression by least squares with an intercept, conditioning
/// on the first `order` values. Plain least squares is used instead of
/// moment-based estimators because trending series fit lag weights above
/// one, which the stationary estimators cannot produce.
inline ARModel fit_ar(std::span<const double> series, int order) {
    if (order < 1) {
        throw SpecViolation("autoregression order must be at least 1");
    }
    const std::size_t n = series.size();
    const std::size_t cols = static_cast<std::size_t>(order) + 1;
    if (n < cols + static_cast<std::size_t>(order)) {
        throw SeriesTooShort("fitting AR(" + std::to_string(order) + ") needs at least " +
                             std::to_string(cols + static_cast<std::size_t>(order)) + " points, got " +
                             std::to_string(n));
    }
    const std::size_t rows = n - static_cast<std::size_t>(order);

    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    std::vector<std::string> labels;
    labels.reserve(cols);
    labels.emplace_back("const");
    for (int j = 1; j <= order; ++j) labels.push_back("lag" + std::to_string(j));

    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + static_cast<std::size_t>(order);
        X(static_cast<Eigen::Index>(r), 0) = 1.0;
        for (int j = 1; j <= order; ++j) {
            X(static_cast<Eigen::Index>(r), j) = series[t - static_cast<std::size_t>(j)];
        }
        y(static_cast<Eigen::Index>(r)) = series[t];
    }

    ARModel model;
    model.order = order;
    model.coefficients = fit_least_squares(X, y, labels);
    return model;
}

inline std::vector<double> pacf(const core::DailySeries& series, int max_lag) {
    return pacf(std::span<const double>(series.values()), max_lag);
}

inline ARModel fit_ar(const core::DailySeries& series, int order, core::DateRange fit_range) {
    const auto window = series.slice(fit_range);
    ARModel model = fit_ar(std::span<const double>(window.values()), order);
    model.fit_range = fit_range;
    return model;
}

/// One-step-ahead prediction from the latest observed values; recent must
/// hold at least `order` entries with the newest value last.
inline double ar_one_step(const ARModel& model, std::span<const double> recent) {
    if (recent.size() < static_cast<std::size_t>(model.order)) {
        throw SeriesTooShort("one-step AR(" + std::to_string(model.order) + ") prediction needs " +
                             std::to_string(model.order) + " recent values, got " + std::to_string(recent.size()));
    }
    double acc = model.coefficients.values(0);
    for (int j = 1; j <= model.order; ++j) {
        acc += model.coefficients.values(j) * recent[recent.size() - static_cast<std::size_t>(j)];
    }
    return acc;
}

/// One-step-ahead predictions over a run of days, each computed from the
/// observed demand of the preceding `order` days. Every horizon day needs
/// its full lag window in the series; the horizon's own actuals are
/// attached (with the error report) when the series covers them all.
inline ForecastResult forecast_ar(const ARModel& model, const core::DailySeries& actual_demand,
                                  core::Date horizon_start, long n_days) {
    if (n_days < 1) {
        throw SpecViolation("forecast horizon must cover at least one day");
    }
    ForecastResult out;
    out.dates.reserve(static_cast<std::size_t>(n_days));
    out.predictions.reserve(static_cast<std::size_t>(n_days));
    for (long i = 0; i < n_days; ++i) {
        const core::Date day = horizon_start + core::Days{i};
        const auto first_lag = actual_demand.index_of(day - core::Days{model.order});
        const auto last_lag = actual_demand.index_of(day - core::Days{1});
        if (!first_lag || !last_lag) {
            throw MissingLagValue("observed demand '" + actual_demand.label() + "' does not cover the " +
                                  std::to_string(model.order) + " days before " + core::format_iso_date(day));
        }
        out.dates.push_back(day);
        out.predictions.push_back(
            ar_one_step(model, std::span<const double>(actual_demand.values()).first(*last_lag + 1)));
    }
    const core::Date last_day = horizon_start + core::Days{n_days - 1};
    if (actual_demand.index_of(last_day)) {
        std::vector<double> observed(static_cast<std::size_t>(n_days));
        for (long i = 0; i < n_days; ++i) {
            observed[static_cast<std::size_t>(i)] = *actual_demand.value_on(horizon_start + core::Days{i});
        }
        out.attach_actuals(observed);
    }
    return out;
}

/// One benchmarked target year: the autoregression refitted on all history
/// before the year, then run one step ahead across it on observed values.
struct ARYearlyResult {
    int year = 0;
    ARModel model;
    ForecastResult result;
};

/// Walk-forward benchmark mirroring rollover_evaluate: same bucket grid,
/// same yearly refit points, same one-step-ahead information set as the
/// lagged regression model, so the two error tables are comparable.
inline std::vector<ARYearlyResult> ar_rollover_evaluate(const core::DailySeries& demand, int order, int first_year,
                                                        int last_year, core::Granularity granularity = {}) {
    if (first_year > last_year) {
        throw SpecViolation("year range runs backwards");
    }
    const core::BucketedSeries bucketed = core::aggregate(demand, granularity);

    std::vector<ARYearlyResult> out;
    for (int year = first_year; year <= last_year; ++year) {
        std::size_t lo = 0;
        while (lo < bucketed.size() && core::year_of(bucketed.starts[lo]) < year) ++lo;
        std::size_t hi = lo;
        while (hi < bucketed.size() && core::year_of(bucketed.starts[hi]) == year) ++hi;
        if (lo == hi) {
            throw InsufficientHistory("no complete " + std::string(core::to_string(granularity.kind)) +
                                      " bucket starts in year " + std::to_string(year));
        }

        ARYearlyResult yr;
        yr.year = year;
        yr.model = fit_ar(std::span<const double>(bucketed.values).first(lo), order);
        yr.model.fit_range = {bucketed.starts[0], detail::bucket_last_day(granularity.kind, bucketed.starts[lo - 1])};
        for (std::size_t i = lo; i < hi; ++i) {
            yr.result.dates.push_back(bucketed.starts[i]);
            yr.result.predictions.push_back(
                ar_one_step(yr.model, std::span<const double>(bucketed.values).first(i)));
        }
        yr.result.attach_actuals(std::span<const double>(bucketed.values).subspan(lo, hi - lo));
        out.push_back(std::move(yr));
    }
    return out;
}

} // namespace demandcast::models
