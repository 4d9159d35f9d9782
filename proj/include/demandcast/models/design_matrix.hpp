#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "demandcast/errors.hpp"
#include "demandcast/models/regressor_spec.hpp"

namespace demandcast::models {

/// Heating demand proxy: how far the day sits below the comfort point.
/// Zero for days at or above the comfort temperature.
inline double temperature_deviation(double temp, double comfortable_temp) {
    return std::max(comfortable_temp - temp, 0.0);
}

/// A fully materialised regression matrix. Rows are consecutive days (or
/// buckets), columns are the regressors selected by a RegressorSpec, in the
/// order the labels list them.
///
/// first_valid_row is 1 whenever a lag column is present and 0 otherwise:
/// the first row of a lagged matrix leans on a value from before the
/// window, so fitting must start one row later. Prediction may still use
/// row 0 when its lag value was supplied.
struct DesignMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> labels;
    Eigen::Index first_valid_row = 0;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

namespace detail {

inline std::vector<std::string> make_labels(const RegressorSpec& spec) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(spec.column_count()));
    if (spec.include_trend) {
        labels.emplace_back("const");
        labels.emplace_back("t");
    }
    for (int k = 1; k <= spec.annual_harmonics; ++k) {
        labels.push_back("sinA" + std::to_string(k));
        labels.push_back("cosA" + std::to_string(k));
    }
    for (int m = 1; m <= spec.weekly_harmonics; ++m) {
        labels.push_back("sinW" + std::to_string(m));
        labels.push_back("cosW" + std::to_string(m));
    }
    for (int k = 1; k <= spec.modulated_harmonics; ++k) {
        labels.push_back("t*sinA" + std::to_string(k));
        labels.push_back("t*cosA" + std::to_string(k));
    }
    if (spec.include_temperature) {
        labels.emplace_back("Td");
    }
    if (spec.include_lag) {
        labels.emplace_back("lag1");
    }
    return labels;
}

} // namespace detail

/// Builds the regression matrix for n_rows consecutive samples starting at
/// absolute time index t_offset. The time index runs from the start of the
/// series the model was anchored to, never from the start of the window, so
/// a matrix built for a forecast horizon continues the training phase.
///
/// temperature must cover exactly the n_rows window when the spec includes
/// the temperature column.
///
/// previous_day_demand, required when the spec includes the lag column,
/// holds in entry r the demand observed one sample before row r (so entry 0
/// is the value just before the window). A NaN in entry 0 means that value
/// is unknown; the row is kept with 0.0 in the lag cell, which is harmless
/// because first_valid_row already excludes row 0 from fitting. NaN anywhere
/// later is an error, because interior rows always have an observed or
/// forecast predecessor.
inline DesignMatrix build_design_matrix(const RegressorSpec& spec, Eigen::Index n_rows, long t_offset,
                                        std::span<const double> temperature = {},
                                        std::span<const double> previous_day_demand = {}) {
    spec.validate();
    if (n_rows < 1) {
        throw SpecViolation("design matrix needs at least one row");
    }
    if (spec.include_temperature && std::cmp_not_equal(temperature.size(), n_rows)) {
        throw LengthMismatch("temperature has " + std::to_string(temperature.size()) + " entries for " +
                             std::to_string(n_rows) + " rows");
    }
    if (spec.include_lag && std::cmp_not_equal(previous_day_demand.size(), n_rows)) {
        throw LengthMismatch("previous-day demand has " + std::to_string(previous_day_demand.size()) +
                             " entries for " + std::to_string(n_rows) + " rows");
    }

    DesignMatrix out;
    out.labels = detail::make_labels(spec);
    out.values.resize(n_rows, static_cast<Eigen::Index>(out.labels.size()));

    const double annual_w = 2.0 * std::numbers::pi / spec.annual_period;
    const double weekly_w = 2.0 * std::numbers::pi / spec.weekly_period;

    for (Eigen::Index r = 0; r < n_rows; ++r) {
        const double t = static_cast<double>(t_offset + r);
        Eigen::Index c = 0;
        if (spec.include_trend) {
            out.values(r, c++) = 1.0;
            out.values(r, c++) = t;
        }
        for (int k = 1; k <= spec.annual_harmonics; ++k) {
            out.values(r, c++) = std::sin(annual_w * k * t);
            out.values(r, c++) = std::cos(annual_w * k * t);
        }
        for (int m = 1; m <= spec.weekly_harmonics; ++m) {
            out.values(r, c++) = std::sin(weekly_w * m * t);
            out.values(r, c++) = std::cos(weekly_w * m * t);
        }
        for (int k = 1; k <= spec.modulated_harmonics; ++k) {
            out.values(r, c++) = t * std::sin(annual_w * k * t);
            out.values(r, c++) = t * std::cos(annual_w * k * t);
        }
        if (spec.include_temperature) {
            const double temp = temperature[static_cast<size_t>(r)];
            if (!std::isfinite(temp)) {
                throw NonFiniteValue("temperature at row " + std::to_string(r) + " is not finite");
            }
            out.values(r, c++) = temperature_deviation(temp, spec.comfortable_temp);
        }
        if (spec.include_lag) {
            const double prev = previous_day_demand[static_cast<size_t>(r)];
            if (std::isnan(prev)) {
                if (r != 0) {
                    throw MissingLagValue("previous-day demand is missing at interior row " + std::to_string(r));
                }
                out.values(r, c++) = 0.0;
            } else if (!std::isfinite(prev)) {
                throw NonFiniteValue("previous-day demand at row " + std::to_string(r) + " is not finite");
            } else {
                out.values(r, c++) = prev;
            }
        }
    }
    if (spec.include_lag) {
        out.first_valid_row = 1;
    }
    return out;
}

/// A train/forecast partition of one matrix plus its target vector.
struct SplitData {
    Eigen::MatrixXd past;
    Eigen::VectorXd past_values;
    Eigen::MatrixXd future;
    Eigen::VectorXd future_values;
};

/// Cuts matrix rows (and the paired target vector) at split_row: rows
/// [first_valid_row, split_row) train, rows [split_row, end) are the
/// horizon. The split must leave at least one horizon row and cannot reach
/// below first_valid_row, so a lag-bearing matrix refuses split_row 0.
inline SplitData split_design_matrix(const DesignMatrix& matrix, std::span<const double> targets,
                                     Eigen::Index split_row) {
    if (std::cmp_not_equal(targets.size(), matrix.rows())) {
        throw LengthMismatch("target vector has " + std::to_string(targets.size()) + " entries for " +
                             std::to_string(matrix.rows()) + " matrix rows");
    }
    if (split_row < matrix.first_valid_row || split_row >= matrix.rows()) {
        throw SplitOutOfRange("split row " + std::to_string(split_row) + " outside [" +
                              std::to_string(matrix.first_valid_row) + ", " + std::to_string(matrix.rows()) + ")");
    }
    const Eigen::Index train_begin = matrix.first_valid_row;
    const Eigen::Index n_train = split_row - train_begin;
    const Eigen::Index n_future = matrix.rows() - split_row;

    SplitData out;
    out.past = matrix.values.middleRows(train_begin, n_train);
    out.future = matrix.values.middleRows(split_row, n_future);
    out.past_values.resize(n_train);
    for (Eigen::Index i = 0; i < n_train; ++i) {
        out.past_values(i) = targets[static_cast<size_t>(train_begin + i)];
    }
    out.future_values.resize(n_future);
    for (Eigen::Index i = 0; i < n_future; ++i) {
        out.future_values(i) = targets[static_cast<size_t>(split_row + i)];
    }
    return out;
}

} // namespace demandcast::models
