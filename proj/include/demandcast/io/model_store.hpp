#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "demandcast/errors.hpp"
#include "demandcast/io/csv.hpp"
#include "demandcast/models/forecast.hpp"

namespace demandcast::io {

namespace detail {

inline std::string bool_field(bool b) { return b ? "1" : "0"; }

inline bool parse_bool_field(std::string_view v, const std::string& key) {
    if (v == "1") return true;
    if (v == "0") return false;
    throw MalformedRow("model key '" + key + "' must be 0 or 1, got '" + std::string(v) + "'");
}

inline double parse_double_strict(std::string_view v, const std::string& key) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw MalformedRow("model key '" + key + "' has unparseable value '" + std::string(v) + "'");
    }
    return out;
}

inline int parse_int_strict(std::string_view v, const std::string& key) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw MalformedRow("model key '" + key + "' has unparseable value '" + std::string(v) + "'");
    }
    return out;
}

} // namespace detail

/// Writes a fitted model as a labelled-coefficient CSV preceded by a
/// comment block holding every field needed to rebuild regressor rows.
/// Values are written with 17 significant digits, so a model loaded from
/// this file predicts bit-identically to the one that was saved.
inline void save_model(std::ostream& out, const models::FittedModel& model,
                       const std::vector<std::string>& comments = {}) {
    for (const std::string& c : comments) {
        out << "# " << c << '\n';
    }
    const models::RegressorSpec& s = model.spec;
    out << "# kind = " << models::to_string(model.kind) << '\n';
    out << "# granularity = " << core::to_string(model.granularity.kind) << '\n';
    out << "# statistic = " << core::to_string(model.granularity.statistic) << '\n';
    out << "# annual_harmonics = " << s.annual_harmonics << '\n';
    out << "# weekly_harmonics = " << s.weekly_harmonics << '\n';
    out << "# modulated_harmonics = " << s.modulated_harmonics << '\n';
    out << "# include_trend = " << detail::bool_field(s.include_trend) << '\n';
    out << "# include_temperature = " << detail::bool_field(s.include_temperature) << '\n';
    out << "# include_lag = " << detail::bool_field(s.include_lag) << '\n';
    out << "# comfortable_temp = " << detail::format_value(s.comfortable_temp) << '\n';
    out << "# annual_period = " << detail::format_value(s.annual_period) << '\n';
    out << "# weekly_period = " << detail::format_value(s.weekly_period) << '\n';
    out << "# time_origin = " << core::format_iso_date(model.time_origin) << '\n';
    out << "# train_start = " << core::format_iso_date(model.train_range.start) << '\n';
    out << "# train_end = " << core::format_iso_date(model.train_range.end) << '\n';
    out << "# condition_estimate = " << detail::format_value(model.coefficients.condition_estimate) << '\n';
    out << "label,value\n";
    for (std::size_t i = 0; i < model.coefficients.labels.size(); ++i) {
        out << model.coefficients.labels[i] << ','
            << detail::format_value(model.coefficients.values(static_cast<Eigen::Index>(i))) << '\n';
    }
}

inline void save_model_file(const std::string& path, const models::FittedModel& model,
                            const std::vector<std::string>& comments = {}) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    save_model(out, model, comments);
    if (!out.flush()) {
        throw Error("failed writing '" + path + "'");
    }
}

/// Reads a model saved by save_model. Comment keys it does not recognise
/// (such as the invocation record) are ignored; recognised keys must all be
/// present. The stored labels are cross-checked against the labels the
/// stored spec generates, so a hand-edited file cannot silently shift
/// coefficients between columns.
inline models::FittedModel load_model(std::istream& in) {
    std::map<std::string, std::string> keys;
    std::vector<std::string> labels;
    std::vector<double> values;
    bool header_seen = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = detail::trim(line);
        if (stripped.empty()) continue;
        if (stripped.front() == '#') {
            const std::string_view body = detail::trim(stripped.substr(1));
            const std::size_t eq = body.find('=');
            if (eq != std::string_view::npos) {
                const std::string key(detail::trim(body.substr(0, eq)));
                if (key.find(' ') == std::string::npos) {
                    keys[key] = std::string(detail::trim(body.substr(eq + 1)));
                }
            }
            continue;
        }
        if (!header_seen) {
            if (stripped != "label,value") {
                throw MalformedRow("line " + std::to_string(line_no) + ": expected 'label,value' header, got '" +
                                   std::string(stripped) + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = detail::split_fields(stripped);
        if (fields.size() != 2) {
            throw MalformedRow("line " + std::to_string(line_no) + ": expected 'label,value', got '" +
                               std::string(stripped) + "'");
        }
        labels.emplace_back(fields[0]);
        values.push_back(detail::parse_double_strict(fields[1], "coefficient '" + labels.back() + "'"));
    }

    const auto need = [&](const char* key) -> const std::string& {
        const auto it = keys.find(key);
        if (it == keys.end()) {
            throw MalformedRow("model file lacks key '" + std::string(key) + "'");
        }
        return it->second;
    };

    models::FittedModel model;
    model.kind = models::parse_model_kind(need("kind"));
    model.granularity.kind = core::parse_bucket_kind(need("granularity"));
    model.granularity.statistic = core::parse_bucket_stat(need("statistic"));
    models::RegressorSpec& s = model.spec;
    s.annual_harmonics = detail::parse_int_strict(need("annual_harmonics"), "annual_harmonics");
    s.weekly_harmonics = detail::parse_int_strict(need("weekly_harmonics"), "weekly_harmonics");
    s.modulated_harmonics = detail::parse_int_strict(need("modulated_harmonics"), "modulated_harmonics");
    s.include_trend = detail::parse_bool_field(need("include_trend"), "include_trend");
    s.include_temperature = detail::parse_bool_field(need("include_temperature"), "include_temperature");
    s.include_lag = detail::parse_bool_field(need("include_lag"), "include_lag");
    s.comfortable_temp = detail::parse_double_strict(need("comfortable_temp"), "comfortable_temp");
    s.annual_period = detail::parse_double_strict(need("annual_period"), "annual_period");
    s.weekly_period = detail::parse_double_strict(need("weekly_period"), "weekly_period");
    model.time_origin = core::parse_iso_date(need("time_origin"));
    model.train_range.start = core::parse_iso_date(need("train_start"));
    model.train_range.end = core::parse_iso_date(need("train_end"));
    s.validate();

    if (labels != models::detail::make_labels(s)) {
        throw MalformedRow("stored coefficient labels disagree with the stored regressor recipe");
    }
    model.coefficients.labels = labels;
    model.coefficients.values.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        model.coefficients.values(static_cast<Eigen::Index>(i)) = values[i];
    }
    model.coefficients.condition_estimate = detail::parse_double_strict(need("condition_estimate"), "condition_estimate");
    return model;
}

inline models::FittedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    try {
        return load_model(in);
    } catch (const Error& e) {
        throw MalformedRow(path + ": " + e.what());
    }
}

} // namespace demandcast::io
