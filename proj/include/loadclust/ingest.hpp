#pragma once

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loadclust/calendar.hpp"
#include "loadclust/common.hpp"

namespace loadclust {

struct Reading {
    std::chrono::year_month_day date;
    int hour;  // 0..23
    double kwh;
};

/// One meter's hourly readings, strictly ordered in time. Gaps are
/// simply absent readings; no imputation happens anywhere downstream.
struct ConsumptionSeries {
    std::string meter_id;
    std::vector<Reading> readings;
};

struct Diagnostic {
    std::size_t line;  // 1-based input line, 0 when not line-related
    std::string message;
};

struct ParseResult {
    std::vector<ConsumptionSeries> series;  // sorted by meter_id
    std::vector<Diagnostic> diagnostics;
};

struct QualityPolicy {
    int min_days_per_context = 10;
    bool reject_all_zero = true;
};

namespace detail {

inline bool parse_hour_timestamp(const std::string& text, std::chrono::year_month_day& date,
                                 int& hour) {
    int y, mo, d, h, mi;
    char tail;
    int got = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d%c", &y, &mo, &d, &h, &mi, &tail);
    if (got < 5) return false;
    if (got == 6 && tail != ':') return false;  // allow trailing ":SS"
    if (h < 0 || h > 23 || mi != 0) return false;
    std::chrono::year_month_day ymd = std::chrono::year{y} / mo / d;
    if (!ymd.ok()) return false;
    date = ymd;
    hour = h;
    return true;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace detail

/// Parses `meter_id,timestamp,kwh` CSV. Malformed rows are skipped with a
/// diagnostic; duplicate (meter, timestamp) rows keep the first value.
inline ParseResult parse_readings(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw input_error("readings CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "meter_id,timestamp,kwh")
        throw input_error("readings CSV: expected header 'meter_id,timestamp,kwh'");

    ParseResult result;
    // key: hour index since epoch, so duplicates and ordering are exact
    std::map<std::string, std::map<long long, Reading>> by_meter;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 3) {
            result.diagnostics.push_back({lineno, "malformed row: expected 3 fields"});
            continue;
        }
        if (fields[0].empty()) {
            result.diagnostics.push_back({lineno, "malformed row: empty meter_id"});
            continue;
        }
        std::chrono::year_month_day date{};
        int hour = 0;
        if (!detail::parse_hour_timestamp(fields[1], date, hour)) {
            result.diagnostics.push_back({lineno, "malformed row: bad timestamp '" + fields[1] + "'"});
            continue;
        }
        double kwh;
        try {
            std::size_t pos = 0;
            kwh = std::stod(fields[2], &pos);
            if (pos != fields[2].size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            result.diagnostics.push_back({lineno, "malformed row: bad kwh '" + fields[2] + "'"});
            continue;
        }
        if (!std::isfinite(kwh)) {
            result.diagnostics.push_back({lineno, "non-finite reading"});
            continue;
        }
        if (kwh < 0.0) {
            result.diagnostics.push_back({lineno, "negative reading"});
            continue;
        }
        long long key = std::chrono::sys_days{date}.time_since_epoch().count() * 24LL + hour;
        auto [it, inserted] = by_meter[fields[0]].try_emplace(key, Reading{date, hour, kwh});
        if (!inserted)
            result.diagnostics.push_back(
                {lineno, "duplicate reading for meter '" + fields[0] + "', first value kept"});
    }
    if (in.bad()) throw std::runtime_error("readings CSV: stream read failure");

    for (auto& [id, readings] : by_meter) {
        ConsumptionSeries s;
        s.meter_id = id;
        s.readings.reserve(readings.size());
        for (auto& [key, r] : readings) s.readings.push_back(r);
        result.series.push_back(std::move(s));
    }
    return result;
}

/// Returns std::nullopt when accepted, otherwise the rejection reason.
/// Coverage is checked before the all-zero rule, context order
/// swd, swe, wwd, wwe.
inline std::optional<std::string> validate_series(const ConsumptionSeries& series,
                                                  const SeasonConfig& seasons,
                                                  const HolidayCalendar& holidays,
                                                  const QualityPolicy& policy) {
    if (policy.min_days_per_context < 1) throw config_error("min_days_per_context must be >= 1");
    std::set<std::chrono::year_month_day> days_seen[4];
    bool any_nonzero = false;
    for (const Reading& r : series.readings) {
        int c = context_index(classify_day(r.date, seasons, holidays));
        days_seen[c].insert(r.date);
        if (r.kwh > 0.0) any_nonzero = true;
    }
    static const char* labels[4] = {"summer weekday", "summer weekend", "winter weekday",
                                    "winter weekend"};
    for (int c = 0; c < 4; ++c)
        if (int(days_seen[c].size()) < policy.min_days_per_context)
            return std::string("insufficient ") + labels[c] + " coverage";
    if (policy.reject_all_zero && !any_nonzero) return std::string("all-zero consumption");
    return std::nullopt;
}

}  // namespace loadclust
