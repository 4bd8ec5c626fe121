#pragma once

// Per-cycle, per-period, and fleet-level energy consumption of duty-cycled
// devices. A device is described by the current draw and response time of
// each of its hardware modules; a duty cycle by its active and sleep
// durations. Everything here is a pure function over those values.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fogduty/common.hpp"

namespace fogduty::energy {

// One hardware module's electrical footprint. `current_per_second_mah` is
// the per-second charge draw derived from the hourly current rating
// (current_active_ma / 3600); both are kept because device datasheets quote
// the former while the cycle math consumes the latter.
struct ModuleSpec {
    std::string name;
    double current_active_ma = 0.0;     // mA while the module is on
    double current_per_second_mah = 0.0;  // mAh consumed per second of operation
    double response_time_s = 0.0;       // seconds the module runs per cycle
};

inline void validate(const ModuleSpec& m) {
    if (m.current_active_ma < 0.0 || m.current_per_second_mah < 0.0)
        throw ValidationError("module '" + m.name + "': negative current");
    if (m.response_time_s < 0.0)
        throw ValidationError("module '" + m.name + "': negative response time");
    // 3-significant-digit datasheet roundings of repeating decimals sit
    // exactly at the 1e-3 bound, so leave a little FP headroom.
    if (m.current_active_ma > 0.0 &&
        !approx_rel(m.current_per_second_mah, m.current_active_ma / 3600.0, 1.0001e-3))
        throw ValidationError("module '" + m.name +
                              "': per-second charge does not match hourly current / 3600");
}

// A device class: the modules that run during the active window plus the
// residual draws that persist through sleep.
struct DeviceProfile {
    std::string name;
    std::vector<ModuleSpec> modules;        // active-window modules
    std::vector<ModuleSpec> sleep_modules;  // accrue for the sleep duration
    double voltage_v = 9.0;
};

inline void validate(const DeviceProfile& p) {
    if (p.voltage_v < 0.0) throw ValidationError("profile '" + p.name + "': negative voltage");
    for (const auto& m : p.modules) validate(m);
    for (const auto& m : p.sleep_modules) validate(m);
}

enum class Mode { regular, emergency, long_sleep };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::regular: return "regular";
        case Mode::emergency: return "emergency";
        case Mode::long_sleep: return "long_sleep";
    }
    return "?";
}

// Fire-code style response bound: a regular-mode device must report within
// this many seconds, which caps active + sleep.
constexpr double kRegulatoryResponseLimitS = 5.0;

struct DutyCycle {
    double active_s = 2.0;
    double sleep_s = 0.0;
    Mode mode = Mode::regular;

    double cycle_s() const { return active_s + sleep_s; }
};

inline void validate(const DutyCycle& d, bool regulatory_check = true) {
    if (d.active_s <= 0.0) throw ValidationError("duty cycle: active duration must be positive");
    if (d.sleep_s < 0.0) throw ValidationError("duty cycle: negative sleep duration");
    if (regulatory_check && d.mode == Mode::regular &&
        d.cycle_s() > kRegulatoryResponseLimitS + 1e-9)
        throw ValidationError("duty cycle: regular-mode cycle exceeds the " +
                              std::to_string(kRegulatoryResponseLimitS) +
                              " s response limit");
}

// Reporting calendar. The reference figures use 30-day months and a
// 12 x 30 day year.
struct Calendar {
    double month_days = 30.0;
    double year_days = 360.0;
};

enum class Period { minute, hour, day, month, year };

inline double period_seconds(Period p, const Calendar& cal = {}) {
    switch (p) {
        case Period::minute: return 60.0;
        case Period::hour: return 3600.0;
        case Period::day: return 86400.0;
        case Period::month: return cal.month_days * 86400.0;
        case Period::year: return cal.year_days * 86400.0;
    }
    throw ValidationError("unknown period");
}

inline const char* to_string(Period p) {
    switch (p) {
        case Period::minute: return "minute";
        case Period::hour: return "hour";
        case Period::day: return "day";
        case Period::month: return "month";
        case Period::year: return "year";
    }
    return "?";
}

// Charge consumed by one duty cycle, in mAh: each active module contributes
// its per-second draw times its response time, each sleep module its
// per-second draw times the sleep duration.
inline double cycle_energy_mah(const DeviceProfile& profile, const DutyCycle& duty,
                               bool regulatory_check = false) {
    validate(profile);
    validate(duty, regulatory_check);
    double total = 0.0;
    for (const auto& m : profile.modules) total += m.current_per_second_mah * m.response_time_s;
    for (const auto& m : profile.sleep_modules) total += m.current_per_second_mah * duty.sleep_s;
    return total;
}

// Energy of one cycle in mWh given its charge in mAh and the supply voltage.
inline double cycle_power_mwh(double charge_mah, double voltage_v) {
    if (charge_mah < 0.0) throw ValidationError("negative charge");
    if (voltage_v < 0.0) throw ValidationError("negative voltage");
    return charge_mah * voltage_v;
}

inline double cycle_power_mwh(const DeviceProfile& profile, const DutyCycle& duty) {
    return cycle_power_mwh(cycle_energy_mah(profile, duty), profile.voltage_v);
}

// Mean consumption rate over the cycle, mWh per second.
inline double consumption_rate_mwh_per_s(const DeviceProfile& profile, const DutyCycle& duty) {
    return cycle_power_mwh(profile, duty) / duty.cycle_s();
}

// Consumption over a calendar period for a fleet of identical devices, kWh.
inline double consumption_kwh(const DeviceProfile& profile, const DutyCycle& duty, Period period,
                              double fleet_size = 1.0, const Calendar& cal = {}) {
    if (fleet_size < 0.0) throw ValidationError("negative fleet size");
    const double cycles = period_seconds(period, cal) / duty.cycle_s();
    return cycles * cycle_power_mwh(profile, duty) * 1e-6 * fleet_size;
}

// Percentage saved by running duty `a` instead of baseline duty `b`,
// comparing mean consumption rates.
inline double savings_vs_baseline_pct(const DutyCycle& a, const DutyCycle& b,
                                      const DeviceProfile& profile) {
    const double rate_a = consumption_rate_mwh_per_s(profile, a);
    const double rate_b = consumption_rate_mwh_per_s(profile, b);
    if (rate_b <= 0.0) throw ValidationError("baseline consumption rate is zero");
    return 100.0 * (1.0 - rate_a / rate_b);
}

// Savings of a fleet that spends `emergency_fraction` of its time in
// emergency operation and the rest in the given regular duty, measured
// against zero-sleep regular operation. Rates blend linearly in time.
inline double mixed_mode_savings_pct(const DeviceProfile& regular_profile,
                                     const DeviceProfile& emergency_profile,
                                     const DutyCycle& regular_duty, double emergency_fraction,
                                     const DutyCycle& emergency_duty = {1.0, 0.0,
                                                                        Mode::emergency}) {
    if (emergency_fraction < 0.0 || emergency_fraction > 1.0)
        throw ValidationError("emergency fraction must lie in [0, 1]");
    const double rate_regular = consumption_rate_mwh_per_s(regular_profile, regular_duty);
    const double rate_emergency = consumption_rate_mwh_per_s(emergency_profile, emergency_duty);
    const DutyCycle baseline{regular_duty.active_s, 0.0, Mode::regular};
    const double rate_baseline = consumption_rate_mwh_per_s(regular_profile, baseline);
    if (rate_baseline <= 0.0) throw ValidationError("baseline consumption rate is zero");
    const double blended =
        (1.0 - emergency_fraction) * rate_regular + emergency_fraction * rate_emergency;
    return 100.0 * (1.0 - blended / rate_baseline);
}

// Full per-device (or per-fleet) consumption summary for one duty cycle.
struct ConsumptionReport {
    double charge_per_cycle_mah = 0.0;
    double energy_per_cycle_mwh = 0.0;
    double kwh_minute = 0.0;
    double kwh_hour = 0.0;
    double kwh_day = 0.0;
    double kwh_month = 0.0;
    double kwh_year = 0.0;
    std::optional<double> savings_pct;  // vs. `baseline`, when one was given
};

inline ConsumptionReport consumption_report(const DeviceProfile& profile, const DutyCycle& duty,
                                            double fleet_size = 1.0, const Calendar& cal = {},
                                            const std::optional<DutyCycle>& baseline = {}) {
    ConsumptionReport r;
    r.charge_per_cycle_mah = cycle_energy_mah(profile, duty);
    r.energy_per_cycle_mwh = cycle_power_mwh(r.charge_per_cycle_mah, profile.voltage_v);
    r.kwh_minute = consumption_kwh(profile, duty, Period::minute, fleet_size, cal);
    r.kwh_hour = consumption_kwh(profile, duty, Period::hour, fleet_size, cal);
    r.kwh_day = consumption_kwh(profile, duty, Period::day, fleet_size, cal);
    r.kwh_month = consumption_kwh(profile, duty, Period::month, fleet_size, cal);
    r.kwh_year = consumption_kwh(profile, duty, Period::year, fleet_size, cal);
    if (baseline) r.savings_pct = savings_vs_baseline_pct(duty, *baseline, profile);
    return r;
}

}  // namespace fogduty::energy
