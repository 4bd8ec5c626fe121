#pragma once

// Occupancy scheduling: residents register daily exit/entry times, the fleet
// runs Long Sleep while an apartment is empty, and the blended savings roll
// up from groups of identical apartments to the whole building.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "fogduty/common.hpp"

namespace fogduty::schedule {

// Minutes after midnight; 24:00 (= 1440) is allowed as an interval end.
struct TimeOfDay {
    int minutes = 0;

    double hours() const { return minutes / 60.0; }

    static TimeOfDay parse(const std::string& text) {
        int h = 0, m = 0;
        char extra = 0;
        if (std::sscanf(text.c_str(), "%d:%d%c", &h, &m, &extra) != 2)
            throw ValidationError("bad time of day '" + text + "', expected HH:MM");
        if (h < 0 || h > 24 || m < 0 || m > 59 || (h == 24 && m != 0))
            throw ValidationError("time of day '" + text + "' out of range");
        return TimeOfDay{h * 60 + m};
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%02d:%02d", minutes / 60, minutes % 60);
        return buf;
    }
};

// One away interval per day: resident leaves at exit_time, returns at
// entry_time. If entry precedes exit the interval wraps midnight.
struct DaySchedule {
    TimeOfDay exit_time;
    TimeOfDay entry_time;
    unsigned weekdays = 0x7F;  // bitmask Mon..Sun; the daily analysis ignores it
};

// Expand schedules into same-day minute intervals, splitting any
// midnight-crossing entry into a tail and a head piece. Validates that the
// results do not overlap.
inline std::vector<std::pair<int, int>> away_intervals(const std::vector<DaySchedule>& schedules) {
    std::vector<std::pair<int, int>> iv;
    for (const auto& s : schedules) {
        if (s.exit_time.minutes == s.entry_time.minutes)
            throw ValidationError("schedule entry time equals exit time");
        if (s.exit_time.minutes < s.entry_time.minutes) {
            iv.emplace_back(s.exit_time.minutes, s.entry_time.minutes);
        } else {
            iv.emplace_back(s.exit_time.minutes, 24 * 60);
            if (s.entry_time.minutes > 0) iv.emplace_back(0, s.entry_time.minutes);
        }
    }
    std::sort(iv.begin(), iv.end());
    for (size_t i = 1; i < iv.size(); ++i)
        if (iv[i].first < iv[i - 1].second)
            throw ValidationError("overlapping away intervals");
    return iv;
}

// Total daily hours the residence is empty.
inline double away_hours(const std::vector<DaySchedule>& schedules) {
    double minutes = 0.0;
    for (const auto& [b, e] : away_intervals(schedules)) minutes += e - b;
    return minutes / 60.0;
}

inline double home_hours(const std::vector<DaySchedule>& schedules) {
    return 24.0 - away_hours(schedules);
}

// A set of apartments sharing the same schedule. The override exists for
// reference data whose recorded away totals differ from the listed
// intervals; when set it wins over the interval-derived value.
struct OccupancyGroup {
    std::string name;
    int apartment_count = 0;
    std::vector<DaySchedule> schedules;
    std::optional<double> away_hours_override;

    double interval_away_hours() const { return away_hours(schedules); }

    double effective_away_hours() const {
        const double a = away_hours_override ? *away_hours_override : interval_away_hours();
        if (a < 0.0 || a > 24.0) throw ValidationError("away hours outside [0, 24]");
        return a;
    }
};

inline void validate(const OccupancyGroup& g) {
    if (g.apartment_count < 0) throw ValidationError("group '" + g.name + "': negative count");
    g.effective_away_hours();  // validates intervals and range
}

// Savings of a Long Sleep cycle relative to zero sleep, ignoring queue delay.
inline double ls_savings_pct(double active_s, double ls_s) {
    return sleep_fraction_savings_pct(active_s, ls_s);
}

// Daily savings of one group: home time at the regular-sleep savings rate,
// away time at the Long Sleep savings rate.
inline double group_daily_savings_pct(double home_pct, double away_pct, double t_savings_pct,
                                      double ls_savings_pct) {
    if (std::fabs(home_pct + away_pct - 100.0) > 0.05)
        throw ValidationError("home and away percentages must sum to 100");
    return (home_pct * t_savings_pct + away_pct * ls_savings_pct) / 100.0;
}

struct GroupSavings {
    std::string name;
    int apartment_count = 0;
    double away_hours = 0.0;
    double home_hours = 0.0;
    double total_away_hours = 0.0;  // count * away
    double total_home_hours = 0.0;
    double away_weight_pct = 0.0;   // share of the building's total away hours
    double savings_pct = 0.0;       // blended daily savings E_g
    double extra_savings_pct = 0.0; // E_g minus the regular-sleep savings
};

// Fleet consumption at zero sleep, used to turn percentages into kWh.
struct FleetBaseline {
    double kwh_day = 0.0;
    double kwh_month = 0.0;
    double kwh_year = 0.0;
};

struct ConsumptionDelta {
    double baseline_kwh = 0.0;  // zero-sleep operation
    double t_only_kwh = 0.0;    // regular sleep only
    double with_ls_kwh = 0.0;   // regular sleep + Long Sleep while away
    double delta_kwh = 0.0;     // t_only - with_ls
};

struct SavingsBreakdown {
    double long_sleep_s = 0.0;
    double ls_savings_pct = 0.0;
    std::vector<GroupSavings> groups;
    double savings_pct = 0.0;        // building-wide E
    double extra_savings_pct = 0.0;  // E minus the regular-sleep savings
    ConsumptionDelta day, month, year;
};

namespace detail {

inline ConsumptionDelta delta_for(double base_kwh, double t_savings_pct, double blended_pct) {
    ConsumptionDelta d;
    d.baseline_kwh = base_kwh;
    d.t_only_kwh = base_kwh * (1.0 - t_savings_pct / 100.0);
    d.with_ls_kwh = base_kwh * (1.0 - blended_pct / 100.0);
    d.delta_kwh = d.t_only_kwh - d.with_ls_kwh;
    return d;
}

}  // namespace detail

// Building-wide blended savings: each group's savings weighted by its share
// of total away hours (apartment count times daily away hours).
inline SavingsBreakdown condominium_savings(const std::vector<OccupancyGroup>& groups,
                                            double t_savings_pct, double ls_s,
                                            double active_s = 2.0,
                                            const FleetBaseline& baseline = {}) {
    if (groups.empty()) throw ValidationError("no occupancy groups");
    double total_away = 0.0;
    for (const auto& g : groups) {
        validate(g);
        total_away += g.apartment_count * g.effective_away_hours();
    }
    if (total_away <= 0.0)
        throw ValidationError("total away time is zero; group weights undefined");

    SavingsBreakdown out;
    out.long_sleep_s = ls_s;
    out.ls_savings_pct = ls_savings_pct(active_s, ls_s);

    double blended = 0.0;
    for (const auto& g : groups) {
        GroupSavings gs;
        gs.name = g.name;
        gs.apartment_count = g.apartment_count;
        gs.away_hours = g.effective_away_hours();
        gs.home_hours = 24.0 - gs.away_hours;
        gs.total_away_hours = g.apartment_count * gs.away_hours;
        gs.total_home_hours = g.apartment_count * gs.home_hours;
        gs.away_weight_pct = 100.0 * gs.total_away_hours / total_away;
        gs.savings_pct = group_daily_savings_pct(100.0 * gs.home_hours / 24.0,
                                                 100.0 * gs.away_hours / 24.0, t_savings_pct,
                                                 out.ls_savings_pct);
        gs.extra_savings_pct = gs.savings_pct - t_savings_pct;
        blended += gs.savings_pct * gs.away_weight_pct / 100.0;
        out.groups.push_back(gs);
    }
    out.savings_pct = blended;
    out.extra_savings_pct = blended - t_savings_pct;
    out.day = detail::delta_for(baseline.kwh_day, t_savings_pct, blended);
    out.month = detail::delta_for(baseline.kwh_month, t_savings_pct, blended);
    out.year = detail::delta_for(baseline.kwh_year, t_savings_pct, blended);
    return out;
}

// One breakdown per Long Sleep value.
inline std::vector<SavingsBreakdown> ls_sweep(const std::vector<OccupancyGroup>& groups,
                                              double t_savings_pct,
                                              const std::vector<double>& ls_values,
                                              double active_s = 2.0,
                                              const FleetBaseline& baseline = {}) {
    if (ls_values.empty()) throw ValidationError("empty Long Sleep sweep");
    std::vector<SavingsBreakdown> rows;
    rows.reserve(ls_values.size());
    for (double ls : ls_values)
        rows.push_back(condominium_savings(groups, t_savings_pct, ls, active_s, baseline));
    return rows;
}

}  // namespace fogduty::schedule
