#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "demandcast/errors.hpp"

namespace demandcast::metrics {

struct MetricReport {
    double mape_percent = 0.0;
    double rmse_absolute = 0.0;
    double rmse_percent = 0.0;
    std::size_t n = 0;
};

namespace detail {
inline void require_paired(std::span<const double> actual, std::span<const double> forecast, const char* op) {
    if (actual.empty()) {
        throw LengthMismatch(std::string(op) + ": empty input");
    }
    if (actual.size() != forecast.size()) {
        throw LengthMismatch(std::string(op) + ": actual has " + std::to_string(actual.size()) +
                             " points, forecast has " + std::to_string(forecast.size()));
    }
}
} // namespace detail

/// Mean absolute percentage error, in percent. Every actual must be strictly
/// positive; a non-positive actual is a hard error rather than a skipped
/// point, so the sample count is never silently changed.
inline double mape(std::span<const double> actual, std::span<const double> forecast) {
    detail::require_paired(actual, forecast, "mape");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0)) {
            throw ZeroActual("mape: actual value at index " + std::to_string(i) + " is not strictly positive");
        }
        acc += std::abs(forecast[i] - actual[i]) / actual[i];
    }
    return 100.0 * acc / static_cast<double>(actual.size());
}

/// Root mean square error in the units of the series.
inline double rmse(std::span<const double> actual, std::span<const double> forecast) {
    detail::require_paired(actual, forecast, "rmse");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = forecast[i] - actual[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(actual.size()));
}

/// RMSE normalized by the mean of the actuals, in percent.
inline double rmse_percent(std::span<const double> actual, std::span<const double> forecast) {
    detail::require_paired(actual, forecast, "rmse_percent");
    double mean = 0.0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());
    if (!(mean > 0.0)) {
        throw ZeroMeanActual("rmse_percent: mean of actuals is not strictly positive");
    }
    return 100.0 * rmse(actual, forecast) / mean;
}

inline MetricReport evaluate(std::span<const double> actual, std::span<const double> forecast) {
    MetricReport r;
    r.mape_percent = mape(actual, forecast);
    r.rmse_absolute = rmse(actual, forecast);
    r.rmse_percent = rmse_percent(actual, forecast);
    r.n = actual.size();
    return r;
}

} // namespace demandcast::metrics
