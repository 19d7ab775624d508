#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "loadclust/ingest.hpp"
#include "loadclust/rlp.hpp"

namespace loadclust {

enum class ConsumerClass {
    Household,
    HouseholdFlatSeason,
    CabinSummerOff,
    CabinWinterOff,
    Lighting,
    FlatIndustrial,
    NoisePV,
};

inline const char* consumer_class_name(ConsumerClass c) {
    switch (c) {
        case ConsumerClass::Household: return "household";
        case ConsumerClass::HouseholdFlatSeason: return "household_flat_season";
        case ConsumerClass::CabinSummerOff: return "cabin_summer_off";
        case ConsumerClass::CabinWinterOff: return "cabin_winter_off";
        case ConsumerClass::Lighting: return "lighting";
        case ConsumerClass::FlatIndustrial: return "flat_industrial";
        case ConsumerClass::NoisePV: return "noise_pv";
    }
    return "?";
}

/// Labeled synthetic population covering one calendar year of hourly
/// readings. Everything is deterministic for a given seed.
struct PopulationSpec {
    int year = 2012;
    int households = 0;
    int households_flat_season = 0;
    int cabins_summer_off = 0;
    int cabins_winter_off = 0;
    int lighting = 0;
    int flat_industrial = 0;
    int noise_pv = 0;
    double noise_sd = 0.15;
    std::uint64_t seed = 0;

    int total() const {
        return households + households_flat_season + cabins_summer_off + cabins_winter_off +
               lighting + flat_industrial + noise_pv;
    }
};

struct LabeledSeries {
    ConsumptionSeries series;
    ConsumerClass label;
};

namespace detail {

/// Household daily shape: small base, a morning peak and a larger
/// evening peak.
inline double household_shape(int hour) {
    if (hour >= 7 && hour <= 9) return 0.6;
    if (hour >= 17 && hour <= 21) return 1.0;
    if (hour >= 22) return 0.4;
    return 0.2;
}

inline double lighting_level(int hour, bool summer) {
    if (summer) return (hour >= 22 || hour < 4) ? 1.0 : 0.0;
    return (hour >= 16 || hour < 8) ? 1.0 : 0.0;
}

/// Per-meter traits of the household class. Real populations are not a
/// single template: a small share of homes sit partly vacant in one
/// season (their activity factor interpolates toward the cabin
/// classes) and a few consumers are erratic, with an arbitrary
/// per-hour profile of their own.
struct HouseholdTraits {
    double summer_activity = 1.0;
    double winter_activity = 1.0;
    bool erratic = false;
};

inline HouseholdTraits household_traits(int index, int class_count) {
    HouseholdTraits t;
    int n_erratic = (class_count * 26) / 1000;       // ~2.6%
    int n_winter_vacant = (class_count * 8) / 1000;  // ~0.8%
    int n_summer_vacant = (class_count * 4) / 1000;  // ~0.4%
    int first_erratic = class_count - n_erratic;
    int first_winter = first_erratic - n_winter_vacant;
    int first_summer = first_winter - n_summer_vacant;
    if (index >= first_erratic) {
        t.erratic = true;
    } else if (index >= first_winter) {
        int i = index - first_winter;
        t.winter_activity = double(i + 1) / double(n_winter_vacant + 1);
    } else if (index >= first_summer) {
        int i = index - first_summer;
        t.summer_activity = double(i + 1) / double(n_summer_vacant + 1);
    }
    return t;
}

}  // namespace detail

inline std::vector<LabeledSeries> generate_population(const PopulationSpec& spec) {
    if (spec.total() < 1) throw input_error("population must contain at least one meter");
    if (spec.noise_sd < 0.0) throw input_error("noise_sd must be >= 0");
    using namespace std::chrono;

    const SeasonConfig seasons;  // defaults; the summer months also gate the seasonal profiles
    const HolidayCalendar holidays;
    const sys_days begin{year{spec.year} / 1 / 1};
    const sys_days end{year{spec.year} / 12 / 31};

    struct ClassBlock {
        ConsumerClass label;
        int count;
    };
    const std::array<ClassBlock, 7> blocks{{
        {ConsumerClass::Household, spec.households},
        {ConsumerClass::HouseholdFlatSeason, spec.households_flat_season},
        {ConsumerClass::CabinSummerOff, spec.cabins_summer_off},
        {ConsumerClass::CabinWinterOff, spec.cabins_winter_off},
        {ConsumerClass::Lighting, spec.lighting},
        {ConsumerClass::FlatIndustrial, spec.flat_industrial},
        {ConsumerClass::NoisePV, spec.noise_pv},
    }};

    std::vector<LabeledSeries> out;
    out.reserve(std::size_t(spec.total()));
    int meter_index = 0;

    for (const ClassBlock& block : blocks) {
        for (int ci = 0; ci < block.count; ++ci, ++meter_index) {
            Rng rng(mix_seed(spec.seed, std::uint64_t(meter_index)));
            char idbuf[16];
            std::snprintf(idbuf, sizeof idbuf, "m%05d", meter_index + 1);

            detail::HouseholdTraits traits;
            std::array<double, kRlpFeatures> cell_level{};  // persistent per-(context,hour) level
            bool use_cell_level = false;

            if (block.label == ConsumerClass::Household) {
                traits = detail::household_traits(ci, block.count);
                if (traits.erratic) {
                    use_cell_level = true;
                    for (double& v : cell_level) v = rng.uniform(0.15, 2.5);
                }
            } else if (block.label == ConsumerClass::NoisePV) {
                use_cell_level = true;
                for (double& v : cell_level) v = rng.uniform(0.05, 1.0);
            }

            LabeledSeries ls;
            ls.label = block.label;
            ls.series.meter_id = idbuf;
            ls.series.readings.reserve(std::size_t((end - begin).count() + 1) * 24);

            for (sys_days day = begin; day <= end; day += days{1}) {
                const year_month_day ymd{day};
                const DayContext ctx = classify_day(ymd, seasons, holidays);
                const bool summer = ctx.season == Season::Summer;
                const bool weekend = ctx.daytype == DayType::Weekend;
                const int cbase = context_index(ctx) * kHoursPerDay;

                for (int h = 0; h < 24; ++h) {
                    double value = 0.0;
                    switch (block.label) {
                        case ConsumerClass::Household: {
                            if (traits.erratic) {
                                value = detail::household_shape(h) * cell_level[std::size_t(cbase + h)];
                            } else {
                                double season_mult =
                                    summer ? traits.summer_activity : 1.8 * traits.winter_activity;
                                value = detail::household_shape(h) * season_mult;
                            }
                            break;
                        }
                        case ConsumerClass::HouseholdFlatSeason:
                            value = detail::household_shape(h);
                            break;
                        case ConsumerClass::CabinSummerOff:
                            // off-season level stays below 2% of the winter peak
                            value = summer ? 0.03 : 1.8 * detail::household_shape(h);
                            break;
                        case ConsumerClass::CabinWinterOff:
                            value = summer ? detail::household_shape(h) : 0.018;
                            break;
                        case ConsumerClass::Lighting:
                            value = detail::lighting_level(h, summer);
                            break;
                        case ConsumerClass::FlatIndustrial:
                            if (h >= 6 && h < 18)
                                value = weekend ? 0.3 : 1.0;
                            else
                                value = 0.05;
                            break;
                        case ConsumerClass::NoisePV:
                            // per-hour-of-day level independent of every other
                            // hour; ignores noise_sd and is always positive
                            value = cell_level[std::size_t(cbase + h)] * rng.uniform(0.75, 1.25);
                            break;
                    }
                    if (block.label != ConsumerClass::NoisePV) {
                        value *= 1.0 + spec.noise_sd * rng.gauss();
                        if (value < 0.0) value = 0.0;
                    }
                    ls.series.readings.push_back({ymd, h, value});
                }
            }
            out.push_back(std::move(ls));
        }
    }
    return out;
}

}  // namespace loadclust
