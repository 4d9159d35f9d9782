#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "demandcast/core/calendar.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/errors.hpp"

namespace demandcast::synth {

/// Recipe for a synthetic demand/temperature pair. Demand is a sum of
/// sinusoidal terms, a linear trend, a heating response to temperature, an
/// industrial step keyed to the day class, and an AR(1) residual. Every
/// amplitude pair is (sine, cosine) for one harmonic, lowest first.
///
/// The defaults describe a mid-latitude load around 1000 units with winters
/// that push usage up through the heating term.
struct GeneratorSpec {
    double base_level = 1000.0;
    double trend_per_day = 0.0;
    std::vector<std::pair<double, double>> annual_amplitudes;      // period annual_period / k
    std::vector<std::pair<double, double>> weekly_amplitudes;      // period weekly_period / m
    std::vector<std::pair<double, double>> modulation_amplitudes;  // annual harmonics scaled by t
    double temp_coefficient = 0.0;  // demand added per degree-day below comfort
    double residual_ar_phi = 0.0;   // AR(1) weight of the demand residual
    double noise_sigma = 0.0;       // innovation sigma of that residual
    double industrial_level = 0.0;             // weekday industrial demand I
    double weekend_industrial_fraction = 0.0;  // weekends carry this fraction of I; holidays carry none
    double comfortable_temp = 18.0;
    double temp_mean = 12.0;             // deg C
    double temp_annual_amplitude = 10.0; // winter-to-mean swing, coldest at t = 0
    double temp_noise_sigma = 3.0;
    double annual_period = 364.0;
    double weekly_period = 7.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(annual_period > 0.0) || !(weekly_period > 0.0)) {
            throw SpecViolation("generator periods must be positive");
        }
        if (noise_sigma < 0.0 || temp_noise_sigma < 0.0) {
            throw SpecViolation("noise sigmas must be non-negative");
        }
        if (std::abs(residual_ar_phi) >= 1.0) {
            throw SpecViolation("residual AR(1) weight must lie inside (-1, 1) to keep the residual stable");
        }
        if (weekend_industrial_fraction < 0.0 || weekend_industrial_fraction > 1.0) {
            throw SpecViolation("weekend industrial fraction must lie in [0, 1]");
        }
    }
};

/// One generated dataset. `truth` is the deterministic part of demand
/// (everything except the AR(1) residual, before clipping); fitting against
/// it instead of `demand` isolates estimator error from noise. Days whose
/// noisy demand fell below zero were clipped to zero and are listed in
/// clipped_days rather than silently floored.
struct SyntheticData {
    core::DailySeries demand;
    core::DailySeries temperature;
    core::DailySeries truth;
    std::vector<core::Date> clipped_days;
};

/// Draws `n_days` of temperature and demand starting at `origin`. The
/// generation is reproducible: one mt19937_64 stream seeded from the spec,
/// temperature noise drawn for all days first, then the demand innovations
/// in day order.
///
/// Every deterministic term is evaluated with explicit formula loops here,
/// on purpose: this generator doubles as the reference implementation that
/// the regression design matrix is tested against, so the two must not
/// share code paths.
inline SyntheticData generate(const GeneratorSpec& spec, const core::CalendarConfig& cal, std::size_t n_days,
                              core::Date origin) {
    spec.validate();
    cal.validate();
    if (n_days == 0) {
        throw SpecViolation("generator needs at least one day");
    }

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    const double annual_w = 2.0 * std::numbers::pi / spec.annual_period;
    const double weekly_w = 2.0 * std::numbers::pi / spec.weekly_period;

    std::vector<double> temperature(n_days);
    for (std::size_t i = 0; i < n_days; ++i) {
        const double t = static_cast<double>(i);
        const double seasonal = spec.temp_mean - spec.temp_annual_amplitude * std::cos(annual_w * t);
        const double noise = (spec.temp_noise_sigma > 0.0) ? spec.temp_noise_sigma * unit_normal(rng) : 0.0;
        temperature[i] = seasonal + noise;
    }

    std::vector<double> truth(n_days);
    std::vector<double> demand(n_days);
    std::vector<core::Date> clipped;
    double residual = 0.0;

    for (std::size_t i = 0; i < n_days; ++i) {
        const double t = static_cast<double>(i);
        double level = spec.base_level + spec.trend_per_day * t;
        for (std::size_t k = 0; k < spec.annual_amplitudes.size(); ++k) {
            const double w = annual_w * static_cast<double>(k + 1) * t;
            level += spec.annual_amplitudes[k].first * std::sin(w) + spec.annual_amplitudes[k].second * std::cos(w);
        }
        for (std::size_t m = 0; m < spec.weekly_amplitudes.size(); ++m) {
            const double w = weekly_w * static_cast<double>(m + 1) * t;
            level += spec.weekly_amplitudes[m].first * std::sin(w) + spec.weekly_amplitudes[m].second * std::cos(w);
        }
        for (std::size_t k = 0; k < spec.modulation_amplitudes.size(); ++k) {
            const double w = annual_w * static_cast<double>(k + 1) * t;
            level += t * (spec.modulation_amplitudes[k].first * std::sin(w) +
                          spec.modulation_amplitudes[k].second * std::cos(w));
        }
        level += spec.temp_coefficient * std::max(spec.comfortable_temp - temperature[i], 0.0);

        const core::Date day = origin + core::Days{static_cast<long>(i)};
        switch (core::classify_day(day, cal)) {
            case core::DayClass::Weekday: level += spec.industrial_level; break;
            case core::DayClass::Weekend: level += spec.weekend_industrial_fraction * spec.industrial_level; break;
            case core::DayClass::Holiday: break;
        }
        truth[i] = level;

        const double innovation = (spec.noise_sigma > 0.0) ? spec.noise_sigma * unit_normal(rng) : 0.0;
        residual = spec.residual_ar_phi * residual + innovation;
        double value = level + residual;
        if (value < 0.0) {
            clipped.push_back(day);
            value = 0.0;
        }
        demand[i] = value;
    }

    return SyntheticData{
        core::DailySeries(origin, std::move(demand), "demand"),
        core::DailySeries(origin, std::move(temperature), "temperature"),
        core::DailySeries(origin, std::move(truth), "truth"),
        std::move(clipped),
    };
}

} // namespace demandcast::synth
