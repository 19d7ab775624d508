#pragma once

#include <chrono>
#include <cstdio>
#include <istream>
#include <set>
#include <string>

#include "loadclust/common.hpp"

namespace loadclust {

enum class Season { Summer, Winter };
enum class DayType { Weekday, Weekend };

struct DayContext {
    Season season;
    DayType daytype;

    friend bool operator==(const DayContext&, const DayContext&) = default;
};

/// Canonical feature-vector order: summer weekday, summer weekend,
/// winter weekday, winter weekend.
inline int context_index(DayContext c) {
    return (c.season == Season::Winter ? 2 : 0) + (c.daytype == DayType::Weekend ? 1 : 0);
}

inline const char* context_name(int index) {
    switch (index) {
        case 0: return "swd";
        case 1: return "swe";
        case 2: return "wwd";
        case 3: return "wwe";
    }
    throw std::logic_error("context index out of range");
}

/// Inclusive month range defining summer; the remaining months are winter.
/// Default May..September (Nordic heating season runs October..April).
struct SeasonConfig {
    int summer_start_month = 5;
    int summer_end_month = 9;

    void validate() const {
        if (summer_start_month < 1 || summer_start_month > 12 || summer_end_month < 1 ||
            summer_end_month > 12)
            throw config_error("season months must be in 1..12");
        // a wrapping range of 12 months would leave no winter
        int span = (summer_end_month - summer_start_month + 12) % 12 + 1;
        if (span == 12) throw config_error("summer range must leave at least one winter month");
    }

    bool is_summer(int month) const {
        if (summer_start_month <= summer_end_month)
            return month >= summer_start_month && month <= summer_end_month;
        return month >= summer_start_month || month <= summer_end_month;
    }
};

namespace detail {

/// Easter Sunday by the Anonymous Gregorian computus.
inline std::chrono::year_month_day easter_sunday(int year) {
    int a = year % 19;
    int b = year / 100, c = year % 100;
    int d = b / 4, e = b % 4;
    int f = (b + 8) / 25;
    int g = (b - f + 1) / 3;
    int h = (19 * a + b - d - g + 15) % 30;
    int i = c / 4, k = c % 4;
    int l = (32 + 2 * e + 2 * i - h - k) % 7;
    int m = (a + 11 * h + 22 * l) / 451;
    int month = (h + l - 7 * m + 114) / 31;
    int day = (h + l - 7 * m + 114) % 31 + 1;
    return std::chrono::year{year} / month / day;
}

}  // namespace detail

/// Fixed-date and Easter-relative Norwegian public holidays for one year.
inline std::set<std::chrono::year_month_day> norwegian_holidays(int year) {
    if (year < 1900 || year > 2100) throw input_error("year out of supported range 1900..2100");
    using namespace std::chrono;
    std::set<year_month_day> out;
    const std::chrono::year y{year};
    out.insert(y / 1 / 1);    // New Year's Day
    out.insert(y / 5 / 1);    // Labour Day
    out.insert(y / 5 / 17);   // Constitution Day
    out.insert(y / 12 / 25);  // Christmas Day
    out.insert(y / 12 / 26);  // Boxing Day
    sys_days easter{detail::easter_sunday(year)};
    out.insert(year_month_day{easter - days{3}});   // Maundy Thursday
    out.insert(year_month_day{easter - days{2}});   // Good Friday
    out.insert(year_month_day{easter + days{1}});   // Easter Monday
    out.insert(year_month_day{easter + days{39}});  // Ascension Day
    out.insert(year_month_day{easter + days{50}});  // Whit Monday
    return out;
}

/// Built-in Norwegian rules plus user overrides. Half-holidays
/// (Christmas Eve, New Year's Eve) are not included by default; add
/// them through extra_dates if wanted.
struct HolidayCalendar {
    std::set<std::chrono::year_month_day> extra_dates;
    std::set<std::chrono::year_month_day> removed_dates;

    bool is_holiday(std::chrono::year_month_day date) const {
        if (extra_dates.count(date)) return true;
        if (removed_dates.count(date)) return false;
        return norwegian_holidays(int(date.year())).count(date) > 0;
    }
};

/// Maps a civil date to its loading context. Saturdays, Sundays and
/// public holidays count as weekends.
inline DayContext classify_day(std::chrono::year_month_day date, const SeasonConfig& seasons,
                               const HolidayCalendar& holidays) {
    if (!date.ok()) throw input_error("invalid civil date");
    using namespace std::chrono;
    weekday wd{sys_days{date}};
    bool weekend = wd == Saturday || wd == Sunday || holidays.is_holiday(date);
    Season season = seasons.is_summer(unsigned(date.month())) ? Season::Summer : Season::Winter;
    return {season, weekend ? DayType::Weekend : DayType::Weekday};
}

/// Override file: one ISO-8601 date per line, "-" prefix removes a
/// built-in holiday. Blank lines and lines starting with '#' are skipped.
inline HolidayCalendar load_holiday_overrides(std::istream& in) {
    HolidayCalendar cal;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        bool remove = line[0] == '-';
        std::string text = remove ? line.substr(1) : line;
        int y, m, d;
        if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d) != 3)
            throw input_error("holiday file line " + std::to_string(lineno) + ": expected ISO date");
        std::chrono::year_month_day date = std::chrono::year{y} / m / d;
        if (!date.ok())
            throw input_error("holiday file line " + std::to_string(lineno) + ": invalid date");
        (remove ? cal.removed_dates : cal.extra_dates).insert(date);
    }
    if (!std::empty(cal.extra_dates) && !std::empty(cal.removed_dates)) {
        for (const auto& d : cal.extra_dates)
            if (cal.removed_dates.count(d))
                throw input_error("holiday file adds and removes the same date");
    }
    return cal;
}

}  // namespace loadclust
