#include <doctest.h>

#include "loadclust/metrics.hpp"
#include "loadclust/rlp.hpp"
#include "loadclust/synth.hpp"

using namespace loadclust;

namespace {

Matrix class_rlps(const std::vector<LabeledSeries>& pop, ConsumerClass cls) {
    SeasonConfig seasons;
    HolidayCalendar cal;
    QualityPolicy policy;
    Matrix out;
    for (const LabeledSeries& ls : pop)
        if (ls.label == cls) {
            Rlp r = extract_rlp(ls.series, seasons, cal, policy);
            out.emplace_back(r.values.begin(), r.values.end());
        }
    return out;
}

double mean_pairwise(const Matrix& a, const Matrix& b) {
    Metric m = Metric::euclidean();
    double s = 0.0;
    std::size_t count = 0;
    for (const Vec& x : a)
        for (const Vec& y : b) {
            if (&x == &y) continue;
            s += dist(m, x, y);
            ++count;
        }
    return s / double(count);
}

}  // namespace

TEST_CASE("population size, labels, and hourly coverage") {
    PopulationSpec spec;
    spec.households = 5;
    spec.seed = 1;
    auto pop = generate_population(spec);
    REQUIRE(pop.size() == 5);
    for (const auto& ls : pop) {
        CHECK(ls.label == ConsumerClass::Household);
        CHECK(ls.series.readings.size() == 8784);  // 2012 is a leap year
        CHECK(ls.series.readings.front().date == std::chrono::year{2012} / 1 / 1);
        CHECK(ls.series.readings.front().hour == 0);
        CHECK(ls.series.readings.back().date == std::chrono::year{2012} / 12 / 31);
        CHECK(ls.series.readings.back().hour == 23);
    }
}

TEST_CASE("generation is deterministic per seed") {
    PopulationSpec spec;
    spec.households = 3;
    spec.cabins_summer_off = 2;
    spec.noise_pv = 1;
    spec.seed = 42;
    auto a = generate_population(spec);
    auto b = generate_population(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].series.meter_id == b[i].series.meter_id);
        REQUIRE(a[i].series.readings.size() == b[i].series.readings.size());
        for (std::size_t j = 0; j < a[i].series.readings.size(); ++j)
            CHECK(a[i].series.readings[j].kwh == b[i].series.readings[j].kwh);
    }
    spec.seed = 43;
    auto c = generate_population(spec);
    CHECK(a[0].series.readings[0].kwh != c[0].series.readings[0].kwh);
}

TEST_CASE("empty population spec is rejected") {
    CHECK_THROWS_AS(generate_population(PopulationSpec{}), input_error);
    PopulationSpec bad;
    bad.households = 1;
    bad.noise_sd = -0.1;
    CHECK_THROWS_AS(generate_population(bad), input_error);
}

TEST_CASE("every class passes ingest validation") {
    PopulationSpec spec;
    spec.households = 2;
    spec.households_flat_season = 2;
    spec.cabins_summer_off = 2;
    spec.cabins_winter_off = 2;
    spec.lighting = 2;
    spec.flat_industrial = 2;
    spec.noise_pv = 2;
    spec.seed = 3;
    auto pop = generate_population(spec);
    SeasonConfig seasons;
    HolidayCalendar cal;
    QualityPolicy policy;
    for (const auto& ls : pop)
        CHECK(!validate_series(ls.series, seasons, cal, policy));
}

TEST_CASE("class separability in rlp space") {
    PopulationSpec spec;
    spec.households = 10;
    spec.cabins_summer_off = 10;
    spec.cabins_winter_off = 10;
    spec.lighting = 5;
    spec.seed = 5;
    auto pop = generate_population(spec);
    Matrix hh = class_rlps(pop, ConsumerClass::Household);
    Matrix cso = class_rlps(pop, ConsumerClass::CabinSummerOff);
    Matrix cwo = class_rlps(pop, ConsumerClass::CabinWinterOff);
    Matrix light = class_rlps(pop, ConsumerClass::Lighting);
    // the trait distribution keeps most households on the main template;
    // compare the typical (non-vacant, non-erratic) members
    CHECK(mean_pairwise(hh, hh) < mean_pairwise(hh, cso));
    CHECK(mean_pairwise(hh, hh) < mean_pairwise(hh, light));
    CHECK(mean_pairwise(cso, cso) < mean_pairwise(cso, cwo));
}

TEST_CASE("cabin classes are near-silent in their off season") {
    PopulationSpec spec;
    spec.cabins_summer_off = 3;
    spec.cabins_winter_off = 3;
    spec.seed = 8;
    auto pop = generate_population(spec);
    SeasonConfig seasons;
    for (const auto& ls : pop) {
        double on_total = 0.0, off_total = 0.0;
        std::size_t on_hours = 0, off_hours = 0;
        for (const Reading& r : ls.series.readings) {
            bool summer = seasons.is_summer(int(unsigned(r.date.month())));
            bool off = (ls.label == ConsumerClass::CabinSummerOff) == summer;
            (off ? off_total : on_total) += r.kwh;
            ++(off ? off_hours : on_hours);
        }
        // mean hourly draw in the off season stays below 5% of the
        // on-season mean (the seasons have different lengths, so
        // compare means, not totals)
        CHECK(off_total / double(off_hours) < 0.05 * (on_total / double(on_hours)));
    }
}

TEST_CASE("lighting meters consume only at night") {
    PopulationSpec spec;
    spec.lighting = 2;
    spec.seed = 4;
    auto pop = generate_population(spec);
    for (const auto& ls : pop)
        for (const Reading& r : ls.series.readings)
            if (r.hour >= 10 && r.hour < 16)  // midday is dark-free all year
                CHECK(r.kwh == 0.0);
}

TEST_CASE("flat industrial meters drop on weekends") {
    PopulationSpec spec;
    spec.flat_industrial = 1;
    spec.seed = 6;
    spec.noise_sd = 0.0;
    auto pop = generate_population(spec);
    SeasonConfig seasons;
    HolidayCalendar cal;
    for (const Reading& r : pop[0].series.readings) {
        if (r.hour < 6 || r.hour >= 18) continue;
        DayType dt = classify_day(r.date, seasons, cal).daytype;
        CHECK(r.kwh == doctest::Approx(dt == DayType::Weekend ? 0.3 : 1.0));
    }
}

TEST_CASE("noise_pv ignores noise_sd and stays positive") {
    PopulationSpec spec;
    spec.noise_pv = 2;
    spec.noise_sd = 0.0;
    spec.seed = 2;
    auto pop = generate_population(spec);
    for (const auto& ls : pop) {
        bool varies = false;
        double first = ls.series.readings[0].kwh;
        for (const Reading& r : ls.series.readings) {
            CHECK(r.kwh > 0.0);
            if (r.kwh != first) varies = true;
        }
        CHECK(varies);
    }
}

TEST_CASE("meter ids are sequential and zero padded") {
    PopulationSpec spec;
    spec.households = 2;
    spec.lighting = 1;
    auto pop = generate_population(spec);
    CHECK(pop[0].series.meter_id == "m00001");
    CHECK(pop[1].series.meter_id == "m00002");
    CHECK(pop[2].series.meter_id == "m00003");
    CHECK(pop[2].label == ConsumerClass::Lighting);
}
