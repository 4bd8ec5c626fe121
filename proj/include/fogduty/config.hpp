#pragma once

// Structured text configuration: sections in brackets, `key = value` lines,
// `#` comments. Profiles carry one record per hardware module; a response
// time of `T` marks a sleep-mode draw that accrues for the duty cycle's
// sleep duration.

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fogduty/common.hpp"
#include "fogduty/energy.hpp"
#include "fogduty/queueing.hpp"
#include "fogduty/schedule.hpp"

namespace fogduty::config {

struct FleetSettings {
    int devices = 0;
    double active_s = 2.0;
    double sleep_s = 3.0;
    double long_sleep_s = 4.0;
    double emergency_active_s = 1.0;
};

struct LinkSettings {
    double speed_bps = 115200.0;
    double radio_packet_bytes = 25.0;
    double mist_packet_bytes = 10.0;
    double control_packet_bytes = 5.0;
};

struct QueueSettings {
    double budget_s = 3.0;
};

struct EmergencySettings {
    double start_s = 0.0;
    double duration_s = 0.0;
    int affected_devices = 0;
};

struct SimSettings {
    uint64_t seed = 1;
    double horizon_s = 10000.0;
    std::string arrival_model = "poisson";       // poisson | cycle
    std::string service_model = "exponential";   // exponential | deterministic
    double feedback_fraction = 0.0;
    std::optional<EmergencySettings> emergency;
};

struct Config {
    double voltage_v = 9.0;
    energy::Calendar calendar;
    std::map<std::string, energy::DeviceProfile> profiles;
    FleetSettings fleet;
    LinkSettings link;
    QueueSettings queue;
    std::vector<schedule::OccupancyGroup> groups;
    SimSettings sim;

    const energy::DeviceProfile& profile(const std::string& name) const {
        auto it = profiles.find(name);
        if (it == profiles.end()) throw ValidationError("profile '" + name + "' not defined");
        return it->second;
    }

    energy::DutyCycle regular_duty() const {
        return {fleet.active_s, fleet.sleep_s, energy::Mode::regular};
    }

    energy::DutyCycle emergency_duty() const {
        return {fleet.emergency_active_s, 0.0, energy::Mode::emergency};
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& s, int line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ConfigError("expected a number, got '" + s + "'", line);
    return v;
}

inline long to_long(const std::string& s, int line) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("expected an integer, got '" + s + "'", line);
    return v;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline energy::ModuleSpec parse_module(const std::string& value, int line, bool& is_sleep) {
    const auto parts = split_ws(value);
    if (parts.size() != 4)
        throw ConfigError("module record needs: name current_ma current_mah_per_s response_time",
                          line);
    energy::ModuleSpec m;
    m.name = parts[0];
    m.current_active_ma = to_double(parts[1], line);
    m.current_per_second_mah = to_double(parts[2], line);
    is_sleep = (parts[3] == "T" || parts[3] == "t");
    m.response_time_s = is_sleep ? 0.0 : to_double(parts[3], line);
    return m;
}

inline unsigned parse_weekdays(const std::string& list, int line) {
    static const char* names[] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};
    unsigned mask = 0;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) {
        bool found = false;
        for (unsigned d = 0; d < 7; ++d) {
            if (token == names[d]) {
                mask |= 1u << d;
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("unknown weekday '" + token + "'", line);
    }
    if (mask == 0) throw ConfigError("empty weekday list", line);
    return mask;
}

inline schedule::DaySchedule parse_schedule(const std::string& value, int line) {
    const auto parts = split_ws(value);
    if (parts.size() != 2 && parts.size() != 3)
        throw ConfigError("schedule needs: HH:MM HH:MM [days]", line);
    try {
        schedule::DaySchedule s{schedule::TimeOfDay::parse(parts[0]),
                                schedule::TimeOfDay::parse(parts[1])};
        if (parts.size() == 3) s.weekdays = parse_weekdays(parts[2], line);
        return s;
    } catch (const ValidationError& e) {
        throw ConfigError(e.what(), line);
    }
}

}  // namespace detail

inline Config parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::string section, arg;
    energy::DeviceProfile* profile = nullptr;
    schedule::OccupancyGroup* group = nullptr;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s.erase(hash);
        s = detail::trim(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("unterminated section header", line);
            const auto inside = detail::trim(s.substr(1, s.size() - 2));
            const auto sp = inside.find(' ');
            section = sp == std::string::npos ? inside : inside.substr(0, sp);
            arg = sp == std::string::npos ? "" : detail::trim(inside.substr(sp + 1));
            profile = nullptr;
            group = nullptr;
            if (section == "profile") {
                if (arg.empty()) throw ConfigError("profile section needs a name", line);
                profile = &cfg.profiles[arg];
                profile->name = arg;
            } else if (section == "group") {
                if (arg.empty()) throw ConfigError("group section needs a name", line);
                cfg.groups.push_back({});
                group = &cfg.groups.back();
                group->name = arg;
            } else if (section != "energy" && section != "fleet" && section != "link" &&
                       section != "queue" && section != "simulation") {
                throw ConfigError("unknown section '" + section + "'", line);
            }
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = detail::trim(s.substr(0, eq));
        const std::string value = detail::trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("expected 'key = value'", line);

        if (section == "energy") {
            if (key == "voltage_v") cfg.voltage_v = detail::to_double(value, line);
            else if (key == "month_days") cfg.calendar.month_days = detail::to_double(value, line);
            else if (key == "year_days") cfg.calendar.year_days = detail::to_double(value, line);
            else throw ConfigError("unknown key '" + key + "' in [energy]", line);
        } else if (section == "profile") {
            if (key == "module") {
                bool is_sleep = false;
                auto m = detail::parse_module(value, line, is_sleep);
                (is_sleep ? profile->sleep_modules : profile->modules).push_back(std::move(m));
            } else {
                throw ConfigError("unknown key '" + key + "' in [profile]", line);
            }
        } else if (section == "fleet") {
            if (key == "devices") cfg.fleet.devices = static_cast<int>(detail::to_long(value, line));
            else if (key == "active_s") cfg.fleet.active_s = detail::to_double(value, line);
            else if (key == "sleep_s") cfg.fleet.sleep_s = detail::to_double(value, line);
            else if (key == "long_sleep_s") cfg.fleet.long_sleep_s = detail::to_double(value, line);
            else if (key == "emergency_active_s")
                cfg.fleet.emergency_active_s = detail::to_double(value, line);
            else throw ConfigError("unknown key '" + key + "' in [fleet]", line);
        } else if (section == "link") {
            if (key == "speed_bps") cfg.link.speed_bps = detail::to_double(value, line);
            else if (key == "radio_packet_bytes")
                cfg.link.radio_packet_bytes = detail::to_double(value, line);
            else if (key == "mist_packet_bytes")
                cfg.link.mist_packet_bytes = detail::to_double(value, line);
            else if (key == "control_packet_bytes")
                cfg.link.control_packet_bytes = detail::to_double(value, line);
            else throw ConfigError("unknown key '" + key + "' in [link]", line);
        } else if (section == "queue") {
            if (key == "budget_s") cfg.queue.budget_s = detail::to_double(value, line);
            else throw ConfigError("unknown key '" + key + "' in [queue]", line);
        } else if (section == "group") {
            if (key == "apartments")
                group->apartment_count = static_cast<int>(detail::to_long(value, line));
            else if (key == "schedule")
                group->schedules.push_back(detail::parse_schedule(value, line));
            else if (key == "away_hours_override")
                group->away_hours_override = detail::to_double(value, line);
            else throw ConfigError("unknown key '" + key + "' in [group]", line);
        } else if (section == "simulation") {
            if (key == "seed")
                cfg.sim.seed = static_cast<uint64_t>(detail::to_long(value, line));
            else if (key == "horizon_s") cfg.sim.horizon_s = detail::to_double(value, line);
            else if (key == "arrival_model") {
                if (value != "poisson" && value != "cycle")
                    throw ConfigError("arrival_model must be 'poisson' or 'cycle'", line);
                cfg.sim.arrival_model = value;
            } else if (key == "service_model") {
                if (value != "exponential" && value != "deterministic")
                    throw ConfigError("service_model must be 'exponential' or 'deterministic'",
                                      line);
                cfg.sim.service_model = value;
            } else if (key == "feedback_fraction")
                cfg.sim.feedback_fraction = detail::to_double(value, line);
            else if (key == "emergency_start_s") {
                if (!cfg.sim.emergency) cfg.sim.emergency.emplace();
                cfg.sim.emergency->start_s = detail::to_double(value, line);
            } else if (key == "emergency_duration_s") {
                if (!cfg.sim.emergency) cfg.sim.emergency.emplace();
                cfg.sim.emergency->duration_s = detail::to_double(value, line);
            } else if (key == "emergency_affected") {
                if (!cfg.sim.emergency) cfg.sim.emergency.emplace();
                cfg.sim.emergency->affected_devices =
                    static_cast<int>(detail::to_long(value, line));
            } else
                throw ConfigError("unknown key '" + key + "' in [simulation]", line);
        } else {
            throw ConfigError("key outside any section", line);
        }
    }

    for (auto& [name, p] : cfg.profiles) p.voltage_v = cfg.voltage_v;
    return cfg;
}

inline Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

// Cross-field checks used by the CLI before any analysis runs.
inline void validate(const Config& cfg) {
    if (cfg.fleet.devices < 1) throw ValidationError("fleet has no devices");
    if (cfg.fleet.active_s <= 0.0) throw ValidationError("fleet active_s must be positive");
    for (const char* name : {"regular", "emergency"}) {
        const auto& p = cfg.profile(name);
        if (p.modules.empty())
            throw ValidationError("profile '" + std::string(name) + "' has no modules");
        energy::validate(p);
    }
    energy::validate(cfg.regular_duty());
    queueing::validate(queueing::LinkSpec{cfg.link.speed_bps, cfg.link.radio_packet_bytes});
    if (cfg.queue.budget_s <= 0.0) throw ValidationError("queue budget must be positive");
    if (cfg.sim.horizon_s <= 0.0) throw ValidationError("simulation horizon must be positive");
    if (cfg.sim.feedback_fraction < 0.0 || cfg.sim.feedback_fraction >= 1.0)
        throw ValidationError("feedback fraction must lie in [0, 1)");
    for (const auto& g : cfg.groups) schedule::validate(g);
}

}  // namespace fogduty::config
