#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "demandcast/errors.hpp"
#include "demandcast/models/design_matrix.hpp"

namespace demandcast::models {

/// Past this spectral condition number the fit is still returned but callers
/// should surface a warning; coefficients start losing digits.
inline constexpr double kConditionWarnThreshold = 1e10;

/// A fitted coefficient vector, paired with the column labels it was fitted
/// against so later predictions can verify they feed the same regressors.
struct Coefficients {
    Eigen::VectorXd values;
    std::vector<std::string> labels;
    double condition_estimate = 0.0;

    bool ill_conditioned() const { return condition_estimate > kConditionWarnThreshold; }
};

namespace detail {

/// Original index of the first column that is (numerically) a linear
/// combination of the columns a rank-revealing QR kept. The pivot order
/// lists the kept columns first; the answer is the smallest original index
/// missing from that set.
inline Eigen::Index first_dependent_column(const Eigen::VectorXi& pivot, Eigen::Index rank, Eigen::Index cols) {
    std::vector<bool> kept(static_cast<size_t>(cols), false);
    for (Eigen::Index i = 0; i < rank; ++i) {
        kept[static_cast<size_t>(pivot(i))] = true;
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (!kept[static_cast<size_t>(j)]) {
            return j;
        }
    }
    return cols - 1;
}

} // namespace detail

/// Least-squares fit of targets onto the given matrix through a column-
/// pivoting Householder QR factorisation. The normal equations are never
/// formed; their squared condition number is exactly what the orthogonal
/// route avoids.
///
/// The returned condition estimate is the ratio of the extreme singular
/// values of the matrix. A numerically rank-deficient matrix (condition at
/// or beyond the reciprocal of machine precision) throws RankDeficient and
/// names the first redundant column, since dropping it is the usual fix.
inline Coefficients fit_least_squares(const Eigen::MatrixXd& matrix, const Eigen::VectorXd& targets,
                                      const std::vector<std::string>& labels) {
    if (targets.size() != matrix.rows()) {
        throw DimensionMismatch("target vector has " + std::to_string(targets.size()) + " entries for " +
                                std::to_string(matrix.rows()) + " rows");
    }
    if (std::cmp_not_equal(labels.size(), matrix.cols())) {
        throw DimensionMismatch("label list has " + std::to_string(labels.size()) + " names for " +
                                std::to_string(matrix.cols()) + " columns");
    }
    if (matrix.rows() < matrix.cols()) {
        throw DimensionMismatch("underdetermined system: " + std::to_string(matrix.rows()) + " rows for " +
                                std::to_string(matrix.cols()) + " columns");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(matrix);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    const double condition = (sigma_min > 0.0) ? sigma_max / sigma_min : std::numeric_limits<double>::infinity();

    const double rank_limit = 1.0 / std::numeric_limits<double>::epsilon();
    if (qr.rank() < matrix.cols() || !(condition < rank_limit)) {
        Eigen::Index effective_rank = qr.rank();
        if (effective_rank == matrix.cols()) {
            // QR kept every column but the condition estimate says the last
            // direction is noise; count the singular values that clear it.
            effective_rank = 0;
            for (Eigen::Index i = 0; i < sigma.size(); ++i) {
                if (sigma(i) > sigma_max / rank_limit) {
                    ++effective_rank;
                }
            }
        }
        const Eigen::Index dependent =
            detail::first_dependent_column(qr.colsPermutation().indices(), effective_rank, matrix.cols());
        throw RankDeficient("column '" + labels[static_cast<size_t>(dependent)] +
                            "' (index " + std::to_string(dependent) +
                            ") is linearly dependent on earlier columns; rank " + std::to_string(effective_rank) +
                            " of " + std::to_string(matrix.cols()));
    }

    Coefficients out;
    out.values = qr.solve(targets);
    out.labels = labels;
    out.condition_estimate = condition;
    return out;
}

inline Coefficients fit_least_squares(const DesignMatrix& matrix, const Eigen::VectorXd& targets) {
    if (matrix.first_valid_row > 0) {
        const Eigen::Index n = matrix.rows() - matrix.first_valid_row;
        if (targets.size() == matrix.rows()) {
            return fit_least_squares(
                Eigen::MatrixXd(matrix.values.bottomRows(n)),
                Eigen::VectorXd(targets.tail(n)), matrix.labels);
        }
        if (targets.size() == n) {
            return fit_least_squares(Eigen::MatrixXd(matrix.values.bottomRows(n)), targets, matrix.labels);
        }
        throw DimensionMismatch("target vector has " + std::to_string(targets.size()) + " entries for " +
                                std::to_string(matrix.rows()) + " rows (" + std::to_string(n) + " usable)");
    }
    return fit_least_squares(matrix.values, targets, matrix.labels);
}

/// Applies fitted coefficients to new rows. The raw overload trusts the
/// caller on column order and only checks the width.
inline Eigen::VectorXd predict(const Eigen::MatrixXd& matrix, const Coefficients& coef) {
    if (matrix.cols() != coef.values.size()) {
        throw DimensionMismatch("matrix has " + std::to_string(matrix.cols()) + " columns for " +
                                std::to_string(coef.values.size()) + " coefficients");
    }
    return matrix * coef.values;
}

/// The labelled overload refuses rows whose columns do not mean what the
/// coefficients were fitted to.
inline Eigen::VectorXd predict(const DesignMatrix& matrix, const Coefficients& coef) {
    if (matrix.labels != coef.labels) {
        size_t i = 0;
        while (i < matrix.labels.size() && i < coef.labels.size() && matrix.labels[i] == coef.labels[i]) {
            ++i;
        }
        std::string detail_msg;
        if (i < matrix.labels.size() && i < coef.labels.size()) {
            detail_msg = "first difference at column " + std::to_string(i) + ": matrix has '" + matrix.labels[i] +
                         "', coefficients have '" + coef.labels[i] + "'";
        } else {
            detail_msg = "matrix has " + std::to_string(matrix.labels.size()) + " columns, coefficients have " +
                         std::to_string(coef.labels.size());
        }
        throw LabelMismatch("regressor labels disagree; " + detail_msg);
    }
    return predict(matrix.values, coef);
}

} // namespace demandcast::models
