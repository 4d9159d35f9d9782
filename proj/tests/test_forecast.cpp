#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "demandcast/core/calendar.hpp"
#include "demandcast/models/forecast.hpp"
#include "demandcast/synth.hpp"

using namespace demandcast;
using core::make_date;
using models::ModelKind;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

synth::GeneratorSpec noise_free_annual() {
    synth::GeneratorSpec gen;
    gen.base_level = 100.0;
    gen.annual_amplitudes = {{20.0, 0.0}};
    gen.noise_sigma = 0.0;
    gen.temp_noise_sigma = 0.0;
    gen.temp_coefficient = 0.0;
    return gen;
}

double coefficient_named(const models::Coefficients& coef, const std::string& label) {
    const auto it = std::find(coef.labels.begin(), coef.labels.end(), label);
    REQUIRE(it != coef.labels.end());
    return coef.values(it - coef.labels.begin());
}

/// Persistence model assembled by hand: the only nonzero coefficient is the
/// lag weight of one, so each prediction repeats the previous observation.
models::FittedModel persistence_model(const core::DailySeries& demand) {
    models::RegressorSpec spec;
    spec.annual_harmonics = 0;
    spec.weekly_harmonics = 0;
    spec.modulated_harmonics = 0;
    spec.include_temperature = false;
    spec.include_lag = true;

    models::FittedModel model;
    model.kind = ModelKind::FSETF;
    model.spec = spec;
    model.coefficients.labels = models::detail::make_labels(spec);  // const, t, lag1
    model.coefficients.values = Eigen::VectorXd::Zero(3);
    model.coefficients.values(2) = 1.0;  // lag1 passes the previous observation through
    model.time_origin = demand.origin();
    model.train_range = demand.range();
    return model;
}

} // namespace

TEST_CASE("seasonal model recovers a pure annual sine exactly", "[forecast][fit]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 1092,
                                      make_date(2010, 1, 1));
    const auto model = models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, make_date(2013, 1, 1));

    CHECK(model.kind == ModelKind::FSE);
    CHECK_FALSE(model.spec.include_temperature);
    CHECK(model.coefficients.values.size() == 40);
    CHECK_THAT(coefficient_named(model.coefficients, "const"), Catch::Matchers::WithinRel(100.0, 1e-6));
    CHECK_THAT(coefficient_named(model.coefficients, "sinA1"), Catch::Matchers::WithinRel(20.0, 1e-6));
    for (std::size_t i = 0; i < model.coefficients.labels.size(); ++i) {
        const auto& label = model.coefficients.labels[i];
        if (label == "const" || label == "sinA1") continue;
        CHECK_THAT(model.coefficients.values(static_cast<Eigen::Index>(i)),
                   Catch::Matchers::WithinAbs(0.0, 1e-4));
    }
}

TEST_CASE("open-loop forecasts continue the training phase", "[forecast][horizon]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 1092,
                                      make_date(2010, 1, 1));
    const auto model = models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, make_date(2013, 1, 1));
    const auto result = models::forecast_horizon(model, make_date(2013, 1, 1), 364);

    REQUIRE(result.predictions.size() == 364);
    CHECK(result.dates.front() == make_date(2013, 1, 1));
    CHECK(result.dates.back() == make_date(2013, 12, 30));
    CHECK_FALSE(result.actuals.has_value());
    CHECK_FALSE(result.report.has_value());

    const long offset = (make_date(2013, 1, 1) - make_date(2010, 1, 1)).count();
    for (std::size_t i = 0; i < result.predictions.size(); ++i) {
        const double t = static_cast<double>(offset + static_cast<long>(i));
        const double expected = 100.0 + 20.0 * std::sin(kTau * t / 364.0);
        CHECK_THAT(result.predictions[i], Catch::Matchers::WithinAbs(expected, 1e-4));
    }
}

TEST_CASE("temperature model recovers its generating coefficients", "[forecast][fit]") {
    synth::GeneratorSpec gen;
    gen.base_level = 800.0;
    gen.annual_amplitudes = {{30.0, 0.0}};
    gen.weekly_amplitudes = {{5.0, 2.0}};
    gen.temp_coefficient = 40.0;
    gen.temp_noise_sigma = 3.0;
    gen.noise_sigma = 0.0;
    gen.seed = 5;
    const auto data = synth::generate(gen, core::CalendarConfig::defaults(), 1456, make_date(2010, 1, 1));

    const auto model =
        models::fit_model(ModelKind::FSET, data.demand, &data.temperature, {}, make_date(2014, 1, 1));
    CHECK(model.coefficients.values.size() == 41);
    CHECK_THAT(coefficient_named(model.coefficients, "const"), Catch::Matchers::WithinRel(800.0, 1e-6));
    CHECK_THAT(coefficient_named(model.coefficients, "sinA1"), Catch::Matchers::WithinRel(30.0, 1e-6));
    CHECK_THAT(coefficient_named(model.coefficients, "sinW1"), Catch::Matchers::WithinRel(5.0, 1e-6));
    CHECK_THAT(coefficient_named(model.coefficients, "cosW1"), Catch::Matchers::WithinRel(2.0, 1e-6));
    CHECK_THAT(coefficient_named(model.coefficients, "Td"), Catch::Matchers::WithinRel(40.0, 1e-6));
}

TEST_CASE("temperature model refuses a summer that never ends", "[forecast][fit]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 730,
                                      make_date(2010, 1, 1));
    const core::DailySeries warm(make_date(2010, 1, 1), std::vector<double>(730, 25.0), "temperature");
    // always above the comfort point, so the heating column is identically zero
    CHECK_THROWS_AS(models::fit_model(ModelKind::FSET, data.demand, &warm, {}, make_date(2012, 1, 1)),
                    RankDeficient);
}

TEST_CASE("less than one annual cycle of history is refused", "[forecast][fit]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 360,
                                      make_date(2010, 1, 1));
    CHECK_THROWS_AS(models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, make_date(2011, 1, 1)),
                    InsufficientHistory);
}

TEST_CASE("training window respects the cutoff date", "[forecast][fit]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 800,
                                      make_date(2010, 1, 1));
    const auto model = models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, make_date(2011, 6, 1));
    CHECK(model.train_range.start == make_date(2010, 1, 1));
    CHECK(model.train_range.end == make_date(2011, 5, 31));
}

TEST_CASE("lagged models cannot run open loop", "[forecast][feedback]") {
    synth::GeneratorSpec gen = noise_free_annual();
    gen.temp_coefficient = 20.0;
    gen.temp_noise_sigma = 2.0;
    gen.base_level = 500.0;
    gen.seed = 11;
    const auto data = synth::generate(gen, core::CalendarConfig::defaults(), 1092, make_date(2010, 1, 1));
    const auto model =
        models::fit_model(ModelKind::FSETF, data.demand, &data.temperature, {}, make_date(2013, 1, 1));
    CHECK(model.coefficients.values.size() == 42);
    CHECK_THROWS_AS(models::forecast_horizon(model, make_date(2013, 1, 1), 30), KindRequiresFeedback);
}

TEST_CASE("feedback loop feeds each prediction from the previous observation", "[forecast][feedback]") {
    const core::DailySeries demand(make_date(2020, 1, 1), {5.0, 7.0, 11.0, 13.0, 17.0, 19.0}, "demand");
    const auto model = persistence_model(demand);
    const auto result = models::forecast_feedback(model, demand, nullptr, make_date(2020, 1, 2), 5);

    REQUIRE(result.predictions.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(result.predictions[i] == demand[i]);
    }
    REQUIRE(result.actuals.has_value());
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK((*result.actuals)[i] == demand[i + 1]);
    }
    CHECK(result.report.has_value());
}

TEST_CASE("a constant series is the feedback loop's fixed point", "[forecast][feedback]") {
    const core::DailySeries demand(make_date(2020, 1, 1), std::vector<double>(400, 42.0), "demand");
    const auto model = persistence_model(demand);
    const auto result = models::forecast_feedback(model, demand, nullptr, make_date(2020, 2, 1), 300);
    for (const double p : result.predictions) {
        CHECK(p == 42.0);
    }
    CHECK(result.report->mape_percent == 0.0);
}

TEST_CASE("feedback horizons need an observation before the first bucket", "[forecast][feedback]") {
    const core::DailySeries demand(make_date(2020, 1, 1), std::vector<double>(50, 42.0), "demand");
    const auto model = persistence_model(demand);
    CHECK_THROWS_AS(models::forecast_feedback(model, demand, nullptr, make_date(2020, 1, 1), 5), MissingLagValue);
    // horizon runs past the end of the observations
    CHECK_THROWS_AS(models::forecast_feedback(model, demand, nullptr, make_date(2020, 2, 1), 30), MissingLagValue);
}

TEST_CASE("mutating one observation cannot reach earlier predictions", "[forecast][feedback][causality]") {
    synth::GeneratorSpec gen;
    gen.base_level = 600.0;
    gen.annual_amplitudes = {{40.0, 15.0}};
    gen.weekly_amplitudes = {{12.0, 0.0}};
    gen.temp_coefficient = 25.0;
    gen.temp_noise_sigma = 2.5;
    gen.noise_sigma = 10.0;
    gen.residual_ar_phi = 0.5;
    gen.seed = 99;
    const auto data = synth::generate(gen, core::CalendarConfig::defaults(), 1200, make_date(2010, 1, 1));
    const auto model =
        models::fit_model(ModelKind::FSETF, data.demand, &data.temperature, {}, make_date(2013, 1, 1));

    const core::Date horizon = make_date(2013, 1, 15);
    const auto baseline = models::forecast_feedback(model, data.demand, &data.temperature, horizon, 50);

    const std::size_t mutated_index = *data.demand.index_of(horizon) + 20;
    std::vector<double> tampered(data.demand.values());
    tampered[mutated_index] += 100.0;
    const core::DailySeries mutated(data.demand.origin(), tampered, data.demand.label());
    const auto rerun = models::forecast_feedback(model, mutated, &data.temperature, horizon, 50);

    for (std::size_t i = 0; i <= 20; ++i) {
        CHECK(rerun.predictions[i] == baseline.predictions[i]);
    }
    CHECK(rerun.predictions[21] != baseline.predictions[21]);
}

TEST_CASE("walk-forward evaluation re-fits before each target year", "[forecast][rollover]") {
    synth::GeneratorSpec gen;
    gen.base_level = 1000.0;
    gen.annual_amplitudes = {{30.0, 10.0}};
    gen.weekly_amplitudes = {{10.0, 0.0}};
    gen.temp_coefficient = 25.0;
    gen.temp_noise_sigma = 2.0;
    gen.noise_sigma = 8.0;
    gen.residual_ar_phi = 0.5;
    gen.seed = 77;
    const auto data = synth::generate(gen, core::CalendarConfig::defaults(), 2184, make_date(2010, 1, 1));

    const auto years =
        models::rollover_evaluate(ModelKind::FSET, data.demand, &data.temperature, {}, 2012, 2014);
    REQUIRE(years.size() == 3);
    const std::size_t expected_days[] = {366, 365, 365};  // 2012 is a leap year
    for (std::size_t i = 0; i < years.size(); ++i) {
        CHECK(years[i].year == 2012 + static_cast<int>(i));
        CHECK(years[i].result.dates.front() == make_date(years[i].year, 1, 1));
        CHECK(years[i].result.dates.size() == expected_days[i]);
        CHECK(years[i].model.train_range.end < make_date(years[i].year, 1, 1));
        REQUIRE(years[i].result.report.has_value());
        CHECK(years[i].result.report->mape_percent > 0.0);
        CHECK(years[i].result.report->mape_percent < 3.0);
    }

    const auto fed = models::rollover_evaluate(ModelKind::FSETF, data.demand, &data.temperature, {}, 2013, 2013);
    REQUIRE(fed.size() == 1);
    CHECK(fed[0].result.report->mape_percent < 3.0);
}

TEST_CASE("years outside the data are reported, not silently skipped", "[forecast][rollover]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 2184,
                                      make_date(2010, 1, 1));
    CHECK_THROWS_AS(models::rollover_evaluate(ModelKind::FSE, data.demand, nullptr, {}, 2012, 2019),
                    InsufficientHistory);
    CHECK_THROWS_AS(models::rollover_evaluate(ModelKind::FSE, data.demand, nullptr, {}, 2014, 2012),
                    SpecViolation);
}

TEST_CASE("weekly bucketing adapts the harmonic grid", "[forecast][granularity]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 1820,
                                      make_date(2010, 1, 1));
    const core::Granularity weekly{core::BucketKind::Weekly, core::BucketStat::Mean};
    const core::Date cutoff = make_date(2010, 1, 1) + core::Days(1456);
    const auto model = models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, cutoff, weekly);

    CHECK(model.granularity.kind == core::BucketKind::Weekly);
    CHECK(model.spec.weekly_harmonics == 0);
    CHECK(model.spec.annual_period == 52.0);

    const auto result = models::forecast_horizon(model, cutoff, 52);
    REQUIRE(result.predictions.size() == 52);
    for (std::size_t i = 0; i < result.predictions.size(); ++i) {
        double mean = 0.0;
        for (int d = 0; d < 7; ++d) {
            const double t = 1456.0 + static_cast<double>(7 * i) + d;
            mean += 100.0 + 20.0 * std::sin(kTau * t / 364.0);
        }
        mean /= 7.0;
        CHECK_THAT(result.predictions[i], Catch::Matchers::WithinAbs(mean, 1e-4));
    }
}

TEST_CASE("monthly bucketing tracks an annual cycle within a few percent", "[forecast][granularity]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 1820,
                                      make_date(2010, 1, 1));
    const core::Granularity monthly{core::BucketKind::Monthly, core::BucketStat::Mean};
    const auto years = models::rollover_evaluate(ModelKind::FSE, data.demand, nullptr, {}, 2013, 2013, monthly);
    REQUIRE(years.size() == 1);
    CHECK(years[0].model.spec.annual_period == 12.0);
    CHECK(years[0].model.spec.annual_harmonics == 5);
    CHECK(years[0].result.dates.size() == 12);
    CHECK(years[0].result.dates.front() == make_date(2013, 1, 1));
    REQUIRE(years[0].result.report.has_value());
    CHECK(years[0].result.report->mape_percent < 3.0);
}

TEST_CASE("temperature models demand a scenario over the horizon", "[forecast][horizon]") {
    synth::GeneratorSpec gen = noise_free_annual();
    gen.temp_coefficient = 15.0;
    gen.temp_noise_sigma = 1.0;
    gen.seed = 3;
    const auto data = synth::generate(gen, core::CalendarConfig::defaults(), 1092, make_date(2010, 1, 1));
    const auto model =
        models::fit_model(ModelKind::FSET, data.demand, &data.temperature, {}, make_date(2013, 1, 1));

    CHECK_THROWS_AS(models::forecast_horizon(model, make_date(2013, 1, 1), 30), MissingTemperature);
    // a scenario that stops short of the horizon end is just as unusable
    const core::DailySeries stub(make_date(2013, 1, 1), std::vector<double>(10, 5.0), "scenario");
    CHECK_THROWS_AS(models::forecast_horizon(model, make_date(2013, 1, 1), 30, &stub), MissingTemperature);

    const core::DailySeries scenario(make_date(2013, 1, 1), std::vector<double>(30, 5.0), "scenario");
    const auto result = models::forecast_horizon(model, make_date(2013, 1, 1), 30, &scenario);
    CHECK(result.predictions.size() == 30);
}

TEST_CASE("error reports demand matching lengths", "[forecast]") {
    const auto data = synth::generate(noise_free_annual(), core::CalendarConfig::defaults(), 1092,
                                      make_date(2010, 1, 1));
    const auto model = models::fit_model(ModelKind::FSE, data.demand, nullptr, {}, make_date(2013, 1, 1));
    auto result = models::forecast_horizon(model, make_date(2013, 1, 1), 10);
    const std::vector<double> shorter = {1.0, 2.0};
    CHECK_THROWS_AS(result.attach_actuals(shorter), LengthMismatch);
    const std::vector<double> ok(10, 100.0);
    result.attach_actuals(ok);
    CHECK(result.report.has_value());
}
