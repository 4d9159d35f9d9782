#pragma once

#include <cmath>
#include <string>

#include "demandcast/errors.hpp"

namespace demandcast::models {

/// Which regressors the design matrix carries. Harmonic counts are in
/// sin/cos pairs. The defaults give 40 sinusoidal/trend columns; adding the
/// temperature column makes the familiar 41.
struct RegressorSpec {
    int annual_harmonics = 12;    // pairs over the annual period
    int weekly_harmonics = 2;     // pairs over the weekly period
    int modulated_harmonics = 5;  // annual pairs multiplied by the day index
    bool include_trend = true;    // constant + linear day index
    bool include_temperature = false;
    bool include_lag = false;     // previous-day demand as a regressor
    double comfortable_temp = 18.0;  // degree-day base, deg C
    double annual_period = 364.0;    // days; 52 or 12 for bucketed fits
    double weekly_period = 7.0;

    int column_count() const {
        return (include_trend ? 2 : 0) + 2 * (annual_harmonics + weekly_harmonics + modulated_harmonics) +
               (include_temperature ? 1 : 0) + (include_lag ? 1 : 0);
    }

    /// Sampling-theorem and consistency checks. With unit sample spacing the
    /// shortest representable period is 2, so period / harmonics must stay
    /// at or above 2 on both the annual and weekly axes.
    void validate() const {
        if (annual_harmonics < 0 || weekly_harmonics < 0 || modulated_harmonics < 0) {
            throw SpecViolation("harmonic counts must be non-negative");
        }
        if (!(annual_period > 0.0) || !(weekly_period > 0.0)) {
            throw SpecViolation("periods must be positive");
        }
        if (annual_harmonics > 0 && annual_period / annual_harmonics < 2.0) {
            throw SpecViolation("annual_harmonics=" + std::to_string(annual_harmonics) + " needs periods below 2 samples (period " +
                                std::to_string(annual_period) + "); the shortest representable period is 2");
        }
        if (weekly_harmonics > 0 && weekly_period / weekly_harmonics < 2.0) {
            throw SpecViolation("weekly_harmonics=" + std::to_string(weekly_harmonics) + " needs periods below 2 samples (period " +
                                std::to_string(weekly_period) + "); the shortest representable period is 2");
        }
        if (modulated_harmonics > annual_harmonics) {
            throw SpecViolation("modulated_harmonics (" + std::to_string(modulated_harmonics) +
                                ") cannot exceed annual_harmonics (" + std::to_string(annual_harmonics) + ")");
        }
        if (column_count() < 1) {
            throw SpecViolation("spec selects no regressors at all");
        }
        if (!std::isfinite(comfortable_temp)) {
            throw SpecViolation("comfortable_temp must be finite");
        }
    }
};

} // namespace demandcast::models
