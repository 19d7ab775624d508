#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "loadclust/ingest.hpp"

namespace loadclust {

inline constexpr int kContexts = 4;
inline constexpr int kHoursPerDay = 24;
inline constexpr int kRlpFeatures = kContexts * kHoursPerDay;

/// 96-feature representative load pattern: per (context, hour) mean
/// consumption, max-normalized to [0, 1].
struct Rlp {
    std::string meter_id;
    std::array<double, kRlpFeatures> values{};

    double at(int context, int hour) const { return values[std::size_t(context * kHoursPerDay + hour)]; }
};

struct RlpMatrix {
    std::vector<Rlp> rows;                                     // sorted by meter_id
    std::vector<std::pair<std::string, std::string>> rejected;  // (meter_id, reason)
};

/// Gap-aware context averaging: each (context, hour) cell is the mean
/// of the readings observed in that cell; cells with no observations
/// stay at zero. The caller must have run validate_series first.
inline Rlp extract_rlp(const ConsumptionSeries& series, const SeasonConfig& seasons,
                       const HolidayCalendar& holidays, const QualityPolicy& policy) {
    std::array<double, kRlpFeatures> sums{};
    std::array<long, kRlpFeatures> counts{};
    std::array<long, kContexts> context_obs{};
    for (const Reading& r : series.readings) {
        int c = context_index(classify_day(r.date, seasons, holidays));
        int cell = c * kHoursPerDay + r.hour;
        sums[std::size_t(cell)] += r.kwh;
        counts[std::size_t(cell)] += 1;
        context_obs[std::size_t(c)] += 1;
    }
    for (int c = 0; c < kContexts; ++c)
        if (context_obs[std::size_t(c)] == 0)
            throw std::logic_error("extract_rlp: unvalidated input (empty context '" +
                                   std::string(context_name(c)) + "' for meter '" +
                                   series.meter_id + "')");
    Rlp rlp;
    rlp.meter_id = series.meter_id;
    double max_raw = 0.0;
    for (int i = 0; i < kRlpFeatures; ++i) {
        double mean = counts[std::size_t(i)] > 0 ? sums[std::size_t(i)] / double(counts[std::size_t(i)]) : 0.0;
        rlp.values[std::size_t(i)] = mean;
        max_raw = std::max(max_raw, mean);
    }
    if (max_raw <= 0.0)
        throw std::logic_error("extract_rlp: unvalidated input (all-zero meter '" +
                               series.meter_id + "')");
    for (double& v : rlp.values) v /= max_raw;
    (void)policy;
    return rlp;
}

/// Validates then extracts every meter; output order is canonical
/// (ascending meter_id) regardless of input order.
inline RlpMatrix extract_all(const std::vector<ConsumptionSeries>& all,
                             const SeasonConfig& seasons, const HolidayCalendar& holidays,
                             const QualityPolicy& policy) {
    std::vector<const ConsumptionSeries*> ordered;
    ordered.reserve(all.size());
    for (const auto& s : all) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const ConsumptionSeries* a, const ConsumptionSeries* b) {
                  return a->meter_id < b->meter_id;
              });
    RlpMatrix out;
    for (const ConsumptionSeries* s : ordered) {
        if (auto reason = validate_series(*s, seasons, holidays, policy))
            out.rejected.emplace_back(s->meter_id, *reason);
        else
            out.rows.push_back(extract_rlp(*s, seasons, holidays, policy));
    }
    return out;
}

inline Matrix to_matrix(const RlpMatrix& m) {
    Matrix data;
    data.reserve(m.rows.size());
    for (const Rlp& r : m.rows) data.emplace_back(r.values.begin(), r.values.end());
    return data;
}

}  // namespace loadclust
