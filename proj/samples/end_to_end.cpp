// Walks the whole toolkit once: simulate six years of demand, fit the
// three regression models, compare them against an autoregressive
// benchmark on held-out years, then split the final summer into day
// classes to estimate the industrial share.

#include <iomanip>
#include <iostream>

#include "demandcast/demandcast.hpp"

using namespace demandcast;
using core::make_date;

int main() {
    auto calendar = core::CalendarConfig::defaults();
    for (int year = 2010; year <= 2015; ++year) {
        calendar.holidays.insert(make_date(year, 1, 1));
        calendar.holidays.insert(make_date(year, 5, 1));
        calendar.holidays.insert(make_date(year, 8, 15));
        calendar.holidays.insert(make_date(year, 12, 25));
    }

    synth::GeneratorSpec gen;
    gen.base_level = 1000.0;
    gen.annual_amplitudes = {{35.0, 10.0}};
    gen.weekly_amplitudes = {{12.0, 3.0}};
    gen.temp_coefficient = 28.0;
    gen.temp_noise_sigma = 2.0;
    gen.noise_sigma = 22.0;
    gen.residual_ar_phi = 0.75;
    gen.industrial_level = 300.0;
    gen.weekend_industrial_fraction = 0.4;
    gen.seed = 20120815;
    const auto data = synth::generate(gen, calendar, 2184, make_date(2010, 1, 1));
    std::cout << "simulated " << data.demand.size() << " days starting " << core::format_iso_date(data.demand.origin())
              << "\n\n";

    std::cout << std::fixed << std::setprecision(2);
    std::cout << "one-step accuracy over 2013 (trained through 2012):\n";
    const core::Date cutoff = make_date(2013, 1, 1);
    for (const auto kind : {models::ModelKind::FSE, models::ModelKind::FSET, models::ModelKind::FSETF}) {
        const auto model = models::fit_model(kind, data.demand, &data.temperature, {}, cutoff);
        const auto result = models::forecast_feedback(model, data.demand, &data.temperature, cutoff, 365);
        std::cout << "  " << std::setw(5) << models::to_string(kind) << "  mape " << std::setw(5)
                  << result.report->mape_percent << "%  rmse " << result.report->rmse_absolute << '\n';
    }

    std::cout << "\nwalk-forward by year, feedback model vs AR(3):\n";
    const auto model_years =
        models::rollover_evaluate(models::ModelKind::FSETF, data.demand, &data.temperature, {}, 2013, 2015);
    const auto ar_years = models::ar_rollover_evaluate(data.demand, 3, 2013, 2015);
    for (std::size_t i = 0; i < model_years.size(); ++i) {
        std::cout << "  " << model_years[i].year << "  fsetf mape " << std::setw(5)
                  << model_years[i].result.report->mape_percent << "%   ar mape " << std::setw(5)
                  << ar_years[i].result.report->mape_percent << "%\n";
    }

    std::cout << "\nsummer day-class split (industrial share):\n";
    const auto reports = segregation::segregate_years(data.demand, calendar, 2013, 2015);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& report = reports[i];
        std::cout << "  " << (2013 + static_cast<int>(i)) << "  weekday mean " << report.means.weekday
                  << "  holiday ratio ";
        if (report.ratio_holiday_percent) {
            std::cout << std::setw(5) << *report.ratio_holiday_percent << '%';
        } else {
            std::cout << "  n/a";
        }
        std::cout << "  weekend ratio " << std::setw(5) << report.ratio_weekend_percent << "%\n";
    }
    std::cout << "\n(generator truth: holiday ratio " << 100.0 * gen.industrial_level / gen.base_level
              << "%, weekend ratio "
              << 100.0 * (gen.industrial_level - gen.weekend_industrial_fraction * gen.industrial_level) /
                     (gen.base_level + gen.weekend_industrial_fraction * gen.industrial_level)
              << "%)\n";
    return 0;
}
