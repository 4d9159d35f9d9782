// Command-line front end: one subcommand per workflow stage, plain CSV/JSON
// in and out, every output stamped with the invocation that produced it.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "demandcast/demandcast.hpp"

namespace fs = std::filesystem;
using namespace demandcast;

namespace {

std::string join_invocation(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) out += ' ';
        out += argv[i];
    }
    return out;
}

std::string series_label(const std::string& path) {
    return fs::path(path).stem().string();
}

std::pair<int, int> parse_year_range(const std::string& text) {
    const auto sep = text.find("..");
    const auto to_year = [&](std::string_view part) {
        int y = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), y);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
            throw SpecViolation("cannot read a year from '" + std::string(part) + "' in '" + text +
                                "'; expected Y1..Y2 or a single year");
        }
        return y;
    };
    if (sep == std::string::npos) {
        const int y = to_year(text);
        return {y, y};
    }
    return {to_year(std::string_view(text).substr(0, sep)), to_year(std::string_view(text).substr(sep + 2))};
}

core::CalendarConfig load_calendar(const std::string& path) {
    if (path.empty()) return core::CalendarConfig::defaults();
    return io::parse_calendar_config_file(path);
}

void warn_if_ill_conditioned(const models::Coefficients& coef, const std::string& context) {
    if (coef.ill_conditioned()) {
        std::cerr << "warning: " << context << " is ill conditioned (condition estimate "
                  << coef.condition_estimate << "); coefficients are losing digits\n";
    }
}

void report_written(const fs::path& path) {
    std::cout << "wrote " << path.string() << '\n';
}

/// Shared model-building inputs: series paths, kind, granularity, spec knobs.
struct ModelInputs {
    std::string demand_path;
    std::string temperature_path;
    std::string kind_name = "fset";
    std::string granularity_name = "daily";
    long max_gap = 3;
    int annual_harmonics = 12;
    int weekly_harmonics = 2;
    int modulated_harmonics = 5;
    double comfort_temp = 18.0;
};

void add_model_options(CLI::App* cmd, ModelInputs& in, bool kind_matters) {
    cmd->add_option("--demand", in.demand_path, "daily demand CSV (date,value)")->required();
    cmd->add_option("--temperature", in.temperature_path, "daily mean temperature CSV (date,value)");
    if (kind_matters) {
        cmd->add_option("--kind", in.kind_name, "model kind: fse, fset or fsetf")
            ->check(CLI::IsMember({"fse", "fset", "fsetf"}));
    }
    cmd->add_option("--granularity", in.granularity_name, "bucket size: daily, weekly or monthly")
        ->check(CLI::IsMember({"daily", "weekly", "monthly"}));
    cmd->add_option("--max-gap", in.max_gap, "longest data gap to fill by interpolation (days)");
    cmd->add_option("--annual-harmonics", in.annual_harmonics, "annual harmonics in the regressor set");
    cmd->add_option("--weekly-harmonics", in.weekly_harmonics, "weekly harmonics in the regressor set");
    cmd->add_option("--modulated-harmonics", in.modulated_harmonics, "trend-modulated annual harmonics");
    cmd->add_option("--comfort-temp", in.comfort_temp, "comfort temperature for the heating regressor");
}

models::RegressorSpec spec_from(const ModelInputs& in) {
    models::RegressorSpec spec;
    spec.annual_harmonics = in.annual_harmonics;
    spec.weekly_harmonics = in.weekly_harmonics;
    spec.modulated_harmonics = in.modulated_harmonics;
    spec.comfortable_temp = in.comfort_temp;
    return spec;
}

/// Loads and aligns the input series. Temperature-free models take the
/// demand file as is; models with a heating regressor need both files on a
/// shared gap-free date axis.
struct LoadedSeries {
    core::DailySeries demand;
    std::optional<core::DailySeries> temperature;

    const core::DailySeries* temperature_ptr() const {
        return temperature ? &*temperature : nullptr;
    }
};

LoadedSeries load_series(const ModelInputs& in, models::ModelKind kind) {
    const auto demand_raw = io::parse_series_csv_file(in.demand_path, {}, series_label(in.demand_path));
    if (kind == models::ModelKind::FSE) {
        return {demand_raw.to_daily(), std::nullopt};
    }
    if (in.temperature_path.empty()) {
        throw MissingTemperature("model kind '" + std::string(models::to_string(kind)) +
                                 "' needs --temperature");
    }
    const auto temp_raw = io::parse_series_csv_file(in.temperature_path, {}, series_label(in.temperature_path));
    auto [demand, temperature] = io::align_and_fill(demand_raw, temp_raw, in.max_gap);
    return {std::move(demand), std::move(temperature)};
}

// --- subcommand: synth ----------------------------------------------------

struct SynthConfig {
    std::string out_dir;
    std::string calendar_path;
    std::string origin = "2010-01-01";
    long days = 2184;
    std::uint64_t seed = 1;
    double base = 1000.0;
    double trend = 0.0;
    double annual_sin = 30.0;
    double annual_cos = 10.0;
    double weekly_sin = 10.0;
    double weekly_cos = 0.0;
    double temp_coef = 25.0;
    double phi = 0.6;
    double noise = 12.0;
    double industrial = 300.0;
    double weekend_fraction = 0.4;
    double temp_mean = 12.0;
    double temp_amp = 10.0;
    double temp_noise = 2.5;
    double comfort_temp = 18.0;
};

int run_synth(const SynthConfig& cfg, const std::string& invocation) {
    synth::GeneratorSpec gen;
    gen.base_level = cfg.base;
    gen.trend_per_day = cfg.trend;
    gen.annual_amplitudes = {{cfg.annual_sin, cfg.annual_cos}};
    gen.weekly_amplitudes = {{cfg.weekly_sin, cfg.weekly_cos}};
    gen.temp_coefficient = cfg.temp_coef;
    gen.residual_ar_phi = cfg.phi;
    gen.noise_sigma = cfg.noise;
    gen.industrial_level = cfg.industrial;
    gen.weekend_industrial_fraction = cfg.weekend_fraction;
    gen.temp_mean = cfg.temp_mean;
    gen.temp_annual_amplitude = cfg.temp_amp;
    gen.temp_noise_sigma = cfg.temp_noise;
    gen.comfortable_temp = cfg.comfort_temp;
    gen.seed = cfg.seed;

    const auto calendar = load_calendar(cfg.calendar_path);
    const auto data = synth::generate(gen, calendar, static_cast<std::size_t>(cfg.days),
                                      core::parse_iso_date(cfg.origin));

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    io::write_series_csv_file((out / "demand.csv").string(), data.demand, {}, {invocation});
    report_written(out / "demand.csv");
    io::write_series_csv_file((out / "temperature.csv").string(), data.temperature, {}, {invocation});
    report_written(out / "temperature.csv");
    {
        std::ofstream sidecar(out / "generator.json");
        if (!sidecar) throw Error("cannot open '" + (out / "generator.json").string() + "' for writing");
        io::write_generator_json(sidecar, gen, invocation);
    }
    report_written(out / "generator.json");
    if (!data.clipped_days.empty()) {
        std::cerr << "note: " << data.clipped_days.size() << " days were clipped at zero demand\n";
    }
    return 0;
}

// --- subcommand: ingest ---------------------------------------------------

struct IngestConfig {
    std::string demand_path;
    std::string temperature_path;
    std::string out_dir;
    long max_gap = 3;
};

int run_ingest(const IngestConfig& cfg, const std::string& invocation) {
    const auto demand_raw = io::parse_series_csv_file(cfg.demand_path, {}, series_label(cfg.demand_path));
    const auto temp_raw = io::parse_series_csv_file(cfg.temperature_path, {}, series_label(cfg.temperature_path));
    const auto [demand, temperature] = io::align_and_fill(demand_raw, temp_raw, cfg.max_gap);

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    io::write_series_csv_file((out / "demand_clean.csv").string(), demand, {}, {invocation});
    report_written(out / "demand_clean.csv");
    io::write_series_csv_file((out / "temperature_clean.csv").string(), temperature, {}, {invocation});
    report_written(out / "temperature_clean.csv");
    std::cout << "aligned range " << core::format_iso_date(demand.origin()) << ".."
              << core::format_iso_date(demand.last_date()) << " (" << demand.size() << " days)\n";
    return 0;
}

// --- subcommand: fit ------------------------------------------------------

struct FitConfig {
    ModelInputs inputs;
    std::string train_end;
    std::string out_dir;
};

int run_fit(const FitConfig& cfg, const std::string& invocation) {
    const auto kind = models::parse_model_kind(cfg.inputs.kind_name);
    const core::Granularity granularity{core::parse_bucket_kind(cfg.inputs.granularity_name),
                                        core::BucketStat::Mean};
    const auto series = load_series(cfg.inputs, kind);
    const core::Date cutoff = cfg.train_end.empty() ? series.demand.last_date() + core::Days(1)
                                                    : core::parse_iso_date(cfg.train_end);

    const auto model = models::fit_model(kind, series.demand, series.temperature_ptr(), spec_from(cfg.inputs),
                                         cutoff, granularity);
    warn_if_ill_conditioned(model.coefficients, "the fitted model");

    fs::create_directories(cfg.out_dir);
    const fs::path out = fs::path(cfg.out_dir) / "model.csv";
    io::save_model_file(out.string(), model, {invocation});
    report_written(out);
    std::cout << "fitted " << models::to_string(kind) << " on "
              << core::format_iso_date(model.train_range.start) << ".."
              << core::format_iso_date(model.train_range.end) << " ("
              << model.coefficients.values.size() << " coefficients)\n";
    return 0;
}

// --- subcommand: forecast -------------------------------------------------

struct ForecastConfig {
    std::string model_path;
    std::string demand_path;
    std::string temperature_path;
    std::string horizon_start;
    long periods = 0;
    long max_gap = 3;
    std::string out_dir;
};

int run_forecast(const ForecastConfig& cfg, const std::string& invocation) {
    const auto model = io::load_model_file(cfg.model_path);
    const core::Date start = core::parse_iso_date(cfg.horizon_start);

    std::optional<core::DailySeries> temperature;
    if (!cfg.temperature_path.empty()) {
        temperature = io::parse_series_csv_file(cfg.temperature_path, {}, series_label(cfg.temperature_path))
                          .to_daily();
    }
    const core::DailySeries* temp_ptr = temperature ? &*temperature : nullptr;

    models::ForecastResult result;
    if (!cfg.demand_path.empty()) {
        // observed demand drives the lag loop and scores the forecast
        const auto observed =
            io::parse_series_csv_file(cfg.demand_path, {}, series_label(cfg.demand_path)).to_daily();
        result = models::forecast_feedback(model, observed, temp_ptr, start, cfg.periods);
    } else {
        result = models::forecast_horizon(model, start, cfg.periods, temp_ptr);
    }

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    io::write_forecast_csv_file((out / "forecast.csv").string(), result, {invocation});
    report_written(out / "forecast.csv");
    if (result.report) {
        std::ofstream metrics(out / "metrics.json");
        if (!metrics) throw Error("cannot open '" + (out / "metrics.json").string() + "' for writing");
        io::write_metrics_json(metrics, model, *result.report, invocation);
        report_written(out / "metrics.json");
        std::cout << "mape " << result.report->mape_percent << "%, rmse " << result.report->rmse_percent
                  << "%\n";
    }
    return 0;
}

// --- subcommand: evaluate -------------------------------------------------

struct EvaluateConfig {
    ModelInputs inputs;
    std::string years;
    int ar_order = 0;
    std::string out_dir;
};

int run_evaluate(const EvaluateConfig& cfg, const std::string& invocation) {
    const auto kind = models::parse_model_kind(cfg.inputs.kind_name);
    const core::Granularity granularity{core::parse_bucket_kind(cfg.inputs.granularity_name),
                                        core::BucketStat::Mean};
    const auto [first_year, last_year] = parse_year_range(cfg.years);
    const auto series = load_series(cfg.inputs, kind);

    const auto years = models::rollover_evaluate(kind, series.demand, series.temperature_ptr(),
                                                 spec_from(cfg.inputs), first_year, last_year, granularity);
    for (const auto& yr : years) {
        warn_if_ill_conditioned(yr.model.coefficients, "the " + std::to_string(yr.year) + " refit");
    }

    std::vector<models::ARYearlyResult> benchmark;
    if (cfg.ar_order > 0) {
        benchmark = models::ar_rollover_evaluate(series.demand, cfg.ar_order, first_year, last_year, granularity);
    }

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    io::write_comparison_csv_file((out / "comparison.csv").string(), years, benchmark, {invocation});
    report_written(out / "comparison.csv");
    if (!benchmark.empty()) {
        io::write_ar_table_csv_file((out / "ar_table.csv").string(), benchmark, {invocation});
        report_written(out / "ar_table.csv");
    }
    for (const auto& yr : years) {
        const std::string year_tag = std::to_string(yr.year);
        io::write_forecast_csv_file((out / ("forecast_" + year_tag + ".csv")).string(), yr.result, {invocation});
        report_written(out / ("forecast_" + year_tag + ".csv"));
        std::ofstream metrics(out / ("metrics_" + year_tag + ".json"));
        if (!metrics) {
            throw Error("cannot open '" + (out / ("metrics_" + year_tag + ".json")).string() + "' for writing");
        }
        io::write_metrics_json(metrics, yr.model, *yr.result.report, invocation);
        report_written(out / ("metrics_" + year_tag + ".json"));
    }
    return 0;
}

// --- subcommand: segregate ------------------------------------------------

struct SegregateConfig {
    std::vector<std::string> demand_paths;
    std::string calendar_path;
    std::string years;
    std::string out_dir;
};

int run_segregate(const SegregateConfig& cfg, const std::string& invocation) {
    const auto calendar = load_calendar(cfg.calendar_path);
    const auto [first_year, last_year] = parse_year_range(cfg.years);

    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> holiday_cells(
        static_cast<std::size_t>(last_year - first_year + 1));
    std::vector<std::vector<std::optional<double>>> weekend_cells(holiday_cells.size());
    std::vector<int> years;
    for (int y = first_year; y <= last_year; ++y) years.push_back(y);

    for (const std::string& path : cfg.demand_paths) {
        labels.push_back(series_label(path));
        const auto demand = io::parse_series_csv_file(path, {}, labels.back()).to_daily();
        const auto reports = segregation::segregate_years(demand, calendar, first_year, last_year);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            holiday_cells[i].push_back(reports[i].ratio_holiday_percent);
            weekend_cells[i].push_back(reports[i].ratio_weekend_percent);
        }
    }

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    io::write_ratio_table_csv_file((out / "ratio_holiday.csv").string(), years, labels, holiday_cells,
                                   {invocation});
    report_written(out / "ratio_holiday.csv");
    io::write_ratio_table_csv_file((out / "ratio_weekend.csv").string(), years, labels, weekend_cells,
                                   {invocation});
    report_written(out / "ratio_weekend.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"demandcast: seasonal regression forecasting for weather-driven daily demand"};
    app.require_subcommand(1);
    const std::string invocation = join_invocation(argc, argv);

    SynthConfig synth_cfg;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic demand/temperature dataset");
    synth_cmd->add_option("--out", synth_cfg.out_dir, "output directory")->required();
    synth_cmd->add_option("--days", synth_cfg.days, "number of days to generate");
    synth_cmd->add_option("--origin", synth_cfg.origin, "first date (YYYY-MM-DD)");
    synth_cmd->add_option("--seed", synth_cfg.seed, "random seed, recorded in the sidecar");
    synth_cmd->add_option("--calendar", synth_cfg.calendar_path, "calendar config for day classes");
    synth_cmd->add_option("--base", synth_cfg.base, "base demand level");
    synth_cmd->add_option("--trend", synth_cfg.trend, "linear trend per day");
    synth_cmd->add_option("--annual-sin", synth_cfg.annual_sin, "first annual sine amplitude");
    synth_cmd->add_option("--annual-cos", synth_cfg.annual_cos, "first annual cosine amplitude");
    synth_cmd->add_option("--weekly-sin", synth_cfg.weekly_sin, "first weekly sine amplitude");
    synth_cmd->add_option("--weekly-cos", synth_cfg.weekly_cos, "first weekly cosine amplitude");
    synth_cmd->add_option("--temp-coef", synth_cfg.temp_coef, "demand per degree below comfort");
    synth_cmd->add_option("--phi", synth_cfg.phi, "residual autocorrelation");
    synth_cmd->add_option("--noise", synth_cfg.noise, "residual innovation sigma");
    synth_cmd->add_option("--industrial", synth_cfg.industrial, "weekday industrial level");
    synth_cmd->add_option("--weekend-fraction", synth_cfg.weekend_fraction,
                          "weekend share of the industrial level");
    synth_cmd->add_option("--temp-mean", synth_cfg.temp_mean, "annual mean temperature");
    synth_cmd->add_option("--temp-amp", synth_cfg.temp_amp, "annual temperature amplitude");
    synth_cmd->add_option("--temp-noise", synth_cfg.temp_noise, "daily temperature noise sigma");
    synth_cmd->add_option("--comfort-temp", synth_cfg.comfort_temp, "comfort temperature");

    IngestConfig ingest_cfg;
    auto* ingest_cmd = app.add_subcommand("ingest", "align demand and temperature onto one gap-free axis");
    ingest_cmd->add_option("--demand", ingest_cfg.demand_path, "daily demand CSV")->required();
    ingest_cmd->add_option("--temperature", ingest_cfg.temperature_path, "daily temperature CSV")->required();
    ingest_cmd->add_option("--out", ingest_cfg.out_dir, "output directory")->required();
    ingest_cmd->add_option("--max-gap", ingest_cfg.max_gap, "longest gap to fill by interpolation (days)");

    FitConfig fit_cfg;
    auto* fit_cmd = app.add_subcommand("fit", "fit a model and store its coefficients");
    add_model_options(fit_cmd, fit_cfg.inputs, true);
    fit_cmd->add_option("--train-end", fit_cfg.train_end,
                        "first date outside the training window (default: end of data)");
    fit_cmd->add_option("--out", fit_cfg.out_dir, "output directory")->required();

    ForecastConfig forecast_cfg;
    auto* forecast_cmd = app.add_subcommand("forecast", "forecast ahead from a stored model");
    forecast_cmd->add_option("--model", forecast_cfg.model_path, "model file written by fit")->required();
    forecast_cmd->add_option("--horizon-start", forecast_cfg.horizon_start, "first forecast date")->required();
    forecast_cmd->add_option("--periods", forecast_cfg.periods, "number of buckets to forecast")->required();
    forecast_cmd->add_option("--demand", forecast_cfg.demand_path,
                             "observed demand; drives the lag loop and scores the forecast");
    forecast_cmd->add_option("--temperature", forecast_cfg.temperature_path, "scenario temperature CSV");
    forecast_cmd->add_option("--max-gap", forecast_cfg.max_gap, "longest gap to fill (days)");
    forecast_cmd->add_option("--out", forecast_cfg.out_dir, "output directory")->required();

    EvaluateConfig evaluate_cfg;
    evaluate_cfg.inputs.kind_name = "fsetf";
    auto* evaluate_cmd = app.add_subcommand("evaluate", "walk-forward yearly evaluation, optionally against an AR benchmark");
    add_model_options(evaluate_cmd, evaluate_cfg.inputs, true);
    evaluate_cmd->add_option("--years", evaluate_cfg.years, "target years Y1..Y2")->required();
    evaluate_cmd->add_option("--ar-order", evaluate_cfg.ar_order,
                             "order of the autoregressive benchmark (0 = off)");
    evaluate_cmd->add_option("--out", evaluate_cfg.out_dir, "output directory")->required();

    SegregateConfig segregate_cfg;
    auto* segregate_cmd = app.add_subcommand("segregate", "estimate industrial demand shares from summer day classes");
    segregate_cmd->add_option("--demand", segregate_cfg.demand_paths, "demand CSV, repeatable for several series")
        ->required();
    segregate_cmd->add_option("--calendar", segregate_cfg.calendar_path, "calendar config with holidays");
    segregate_cmd->add_option("--years", segregate_cfg.years, "target years Y1..Y2")->required();
    segregate_cmd->add_option("--out", segregate_cfg.out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) return run_synth(synth_cfg, invocation);
        if (ingest_cmd->parsed()) return run_ingest(ingest_cfg, invocation);
        if (fit_cmd->parsed()) return run_fit(fit_cfg, invocation);
        if (forecast_cmd->parsed()) return run_forecast(forecast_cfg, invocation);
        if (evaluate_cmd->parsed()) return run_evaluate(evaluate_cfg, invocation);
        if (segregate_cmd->parsed()) return run_segregate(segregate_cfg, invocation);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
