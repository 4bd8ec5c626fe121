#pragma once

// Seeded discrete-event simulation of the device fleet and the coordinator
// queue. Devices run their duty cycles, transmit one report per cycle, obey
// broadcast alarm controls, and follow occupancy schedules into Long Sleep;
// the coordinator serves packets over the serial link, optionally sharing
// capacity with a Poisson stream of feedback control packets. Identical
// seed and configuration produce identical reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "fogduty/common.hpp"
#include "fogduty/energy.hpp"
#include "fogduty/protocol.hpp"
#include "fogduty/queueing.hpp"
#include "fogduty/schedule.hpp"

namespace fogduty::sim {

enum class ArrivalModel {
    poisson_approx,      // aggregate Poisson packet stream at the nominal rate
    deterministic_cycle  // per-device duty cycles, one packet per cycle
};

enum class ServiceModel { exponential, deterministic };

struct EmergencyScenario {
    double start_s = 0.0;
    double duration_s = 0.0;
    int affected_devices = 0;  // devices that detect locally; alarms broadcast to all
};

struct SimConfig {
    int fleet_size = 0;
    double active_s = 2.0;
    double sleep_s = 3.0;       // regular sleep T
    double long_sleep_s = 4.0;  // LS while away
    ArrivalModel arrival_model = ArrivalModel::poisson_approx;
    ServiceModel service_model = ServiceModel::exponential;
    queueing::LinkSpec link{115200.0, 25.0};
    double feedback_fraction = 0.0;
    std::optional<EmergencyScenario> emergency;
    std::vector<schedule::OccupancyGroup> groups;  // empty: no occupancy scheduling
    energy::DeviceProfile regular_profile;
    energy::DeviceProfile emergency_profile;
    energy::Calendar calendar;
    uint64_t seed = 1;
    double horizon_s = 10000.0;
};

struct EventCounts {
    uint64_t cycle_starts = 0;
    uint64_t transmits = 0;
    uint64_t packet_arrivals = 0;
    uint64_t services = 0;
    uint64_t feedback_sent = 0;
    uint64_t feedback_served = 0;
    uint64_t broadcasts = 0;
    uint64_t controls_delivered = 0;
    uint64_t occupancy_switches = 0;
};

struct SimReport {
    double horizon_s = 0.0;
    uint64_t seed = 0;
    double nominal_arrival_pps = 0.0;
    double nominal_service_pps = 0.0;
    double feedback_fraction = 0.0;
    bool saturated = false;

    uint64_t packets_sent = 0;    // sensor reports entering the queue
    uint64_t packets_served = 0;
    uint64_t feedback_sent = 0;   // control packets entering the queue
    uint64_t feedback_served = 0;
    uint64_t packets_in_system = 0;  // all classes, at the horizon

    double mean_number_in_system = 0.0;  // time average over the horizon
    double mean_sojourn_s = 0.0;         // over served packets
    double observed_arrival_pps = 0.0;

    uint64_t cycles_regular = 0;
    uint64_t cycles_emergency = 0;
    uint64_t cycles_long_sleep = 0;
    double fleet_energy_mwh = 0.0;
    double fleet_energy_kwh = 0.0;
    double kwh_day = 0.0;
    double kwh_month = 0.0;
    double kwh_year = 0.0;
    std::vector<double> device_energy_mwh;

    double max_broadcast_latency_s = 0.0;
    EventCounts events;

    // Fixed-format serialization; byte-identical for identical runs.
    std::string to_csv() const {
        std::string out;
        char buf[160];
        auto kv = [&](const char* k, double v) {
            std::snprintf(buf, sizeof(buf), "%s,%.12g\n", k, v);
            out += buf;
        };
        auto kvu = [&](const char* k, uint64_t v) {
            std::snprintf(buf, sizeof(buf), "%s,%llu\n", k, static_cast<unsigned long long>(v));
            out += buf;
        };
        out += "key,value\n";
        kv("horizon_s", horizon_s);
        kvu("seed", seed);
        kv("nominal_arrival_pps", nominal_arrival_pps);
        kv("nominal_service_pps", nominal_service_pps);
        kv("feedback_fraction", feedback_fraction);
        kvu("saturated", saturated ? 1 : 0);
        kvu("packets_sent", packets_sent);
        kvu("packets_served", packets_served);
        kvu("feedback_sent", feedback_sent);
        kvu("feedback_served", feedback_served);
        kvu("packets_in_system", packets_in_system);
        kv("mean_number_in_system", mean_number_in_system);
        kv("mean_sojourn_s", mean_sojourn_s);
        kv("observed_arrival_pps", observed_arrival_pps);
        kvu("cycles_regular", cycles_regular);
        kvu("cycles_emergency", cycles_emergency);
        kvu("cycles_long_sleep", cycles_long_sleep);
        kv("fleet_energy_mwh", fleet_energy_mwh);
        kv("fleet_energy_kwh", fleet_energy_kwh);
        kv("kwh_day", kwh_day);
        kv("kwh_month", kwh_month);
        kv("kwh_year", kwh_year);
        kv("max_broadcast_latency_s", max_broadcast_latency_s);
        kvu("ev_cycle_starts", events.cycle_starts);
        kvu("ev_transmits", events.transmits);
        kvu("ev_packet_arrivals", events.packet_arrivals);
        kvu("ev_services", events.services);
        kvu("ev_feedback_sent", events.feedback_sent);
        kvu("ev_feedback_served", events.feedback_served);
        kvu("ev_broadcasts", events.broadcasts);
        kvu("ev_controls_delivered", events.controls_delivered);
        kvu("ev_occupancy_switches", events.occupancy_switches);
        for (size_t i = 0; i < device_energy_mwh.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "device_energy_mwh,%zu,%.12g\n", i,
                          device_energy_mwh[i]);
            out += buf;
        }
        return out;
    }
};

namespace detail {

// Deterministic random draws: the engine is fully specified by the standard,
// and the mappings below avoid the implementation-defined distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {  // (0, 1]
        return ((eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    uint64_t below(uint64_t n) { return eng_() % n; }

private:
    std::mt19937_64 eng_;
};

enum class EventKind : uint8_t {
    emergency_start,
    emergency_end,
    occupancy_switch,
    cycle_start,
    transmit,
    packet_arrival,   // aggregate Poisson sensor packet
    feedback_arrival,
    service_done,
    control_deliver,
};

struct Event {
    double t = 0.0;
    uint64_t seq = 0;
    EventKind kind{};
    int32_t index = 0;  // device or group index, when relevant
    bool flag = false;  // occupancy: away/home; emergency deliver: alarm on/off

    bool operator>(const Event& o) const {
        if (t != o.t) return t > o.t;
        return seq > o.seq;
    }
};

struct Device {
    protocol::DeviceState control_state;
    bool local_detect = false;  // emergency scenario sensed locally
    bool away = false;
    int group = -1;

    energy::Mode cycle_mode = energy::Mode::regular;  // mode of the cycle in progress
    double cycle_start_t = 0.0;
    double cycle_active_s = 0.0;
    double cycle_sleep_s = 0.0;
    bool started = false;

    double energy_mwh = 0.0;
};

struct QueueEntry {
    double arrived_t = 0.0;
    bool feedback = false;
};

constexpr double kSendSlotS = 0.0008;  // transmit tail of the active window

}  // namespace detail

inline void validate(const SimConfig& cfg) {
    if (cfg.horizon_s <= 0.0) throw ValidationError("horizon must be positive");
    if (cfg.fleet_size < 0) throw ValidationError("negative fleet size");
    if (cfg.active_s <= 0.0) throw ValidationError("active duration must be positive");
    if (cfg.sleep_s < 0.0 || cfg.long_sleep_s < 0.0) throw ValidationError("negative sleep");
    // Regular operation honors the response limit; Long Sleep is exempt.
    energy::validate({cfg.active_s, cfg.sleep_s, energy::Mode::regular}, true);
    if (cfg.feedback_fraction < 0.0 || cfg.feedback_fraction >= 1.0)
        throw ValidationError("feedback fraction must lie in [0, 1)");
    queueing::validate(cfg.link);
    energy::validate(cfg.regular_profile);
    energy::validate(cfg.emergency_profile);
    if (cfg.arrival_model == ArrivalModel::poisson_approx) {
        if (cfg.emergency)
            throw ValidationError("emergency scenarios need the deterministic-cycle model");
        if (!cfg.groups.empty())
            throw ValidationError("occupancy schedules need the deterministic-cycle model");
    }
    for (const auto& g : cfg.groups) schedule::validate(g);
}

inline SimReport run(const SimConfig& cfg) {
    using namespace detail;
    validate(cfg);

    const double mu = queueing::service_rate_pps(cfg.link);
    const double nominal_cycle = cfg.active_s + cfg.sleep_s;
    const double nominal_lambda = cfg.fleet_size / nominal_cycle;
    const double mu_eff = (1.0 - cfg.feedback_fraction) * mu;

    // Per-cycle energy by mode, shared with the analytic energy module.
    const double cycle_mwh_regular = energy::cycle_power_mwh(
        cfg.regular_profile, {cfg.active_s, cfg.sleep_s, energy::Mode::regular});
    const double cycle_mwh_emergency =
        energy::cycle_power_mwh(cfg.emergency_profile, {1.0, 0.0, energy::Mode::emergency});
    const double cycle_mwh_long_sleep = energy::cycle_power_mwh(
        cfg.regular_profile, {cfg.active_s, cfg.long_sleep_s, energy::Mode::long_sleep});

    Rng rng(cfg.seed);
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events;
    uint64_t seq = 0;
    auto schedule_event = [&](double t, EventKind kind, int32_t index = 0, bool flag = false) {
        events.push(Event{t, seq++, kind, index, flag});
    };

    SimReport report;
    report.horizon_s = cfg.horizon_s;
    report.seed = cfg.seed;
    report.nominal_arrival_pps = nominal_lambda;
    report.nominal_service_pps = mu;
    report.feedback_fraction = cfg.feedback_fraction;
    report.saturated = nominal_lambda >= mu_eff;
    report.device_energy_mwh.assign(static_cast<size_t>(cfg.fleet_size), 0.0);

    std::vector<Device> devices(static_cast<size_t>(cfg.fleet_size));
    std::vector<bool> group_away(cfg.groups.size(), false);

    // Queue state.
    std::deque<QueueEntry> fifo;
    bool server_busy = false;
    QueueEntry in_service;
    uint64_t n_in_system = 0;
    double area = 0.0, last_t = 0.0;
    double sojourn_sum = 0.0;
    auto note_change = [&](double t) {
        area += static_cast<double>(n_in_system) * (t - last_t);
        last_t = t;
    };
    auto start_service = [&](double t, const QueueEntry& e) {
        server_busy = true;
        in_service = e;
        const double svc = cfg.service_model == ServiceModel::exponential
                               ? rng.exponential(mu)
                               : 1.0 / mu;
        schedule_event(t + svc, EventKind::service_done);
    };
    const bool per_device = cfg.arrival_model == ArrivalModel::deterministic_cycle;

    // Emergency scenario bookkeeping; a start at or before zero means the
    // fleet begins under the emergency.
    double broadcast_t = -1.0;
    if (cfg.emergency) {
        const auto& em = *cfg.emergency;
        if (em.duration_s < 0.0) throw ValidationError("negative emergency duration");
        if (em.start_s <= 0.0) {
            for (int i = 0; i < cfg.fleet_size; ++i) {
                devices[static_cast<size_t>(i)].control_state.alarm_on = true;
                if (i < em.affected_devices) devices[static_cast<size_t>(i)].local_detect = true;
            }
            schedule_event(em.start_s + em.duration_s, EventKind::emergency_end);
        } else if (em.start_s <= cfg.horizon_s) {
            schedule_event(em.start_s, EventKind::emergency_start);
            schedule_event(em.start_s + em.duration_s, EventKind::emergency_end);
        }
    }

    // Occupancy transitions for every simulated day.
    if (!cfg.groups.empty()) {
        const int days = static_cast<int>(std::ceil(cfg.horizon_s / 86400.0));
        for (size_t g = 0; g < cfg.groups.size(); ++g) {
            const auto intervals = schedule::away_intervals(cfg.groups[g].schedules);
            for (int d = 0; d <= days; ++d) {
                for (const auto& [b, e] : intervals) {
                    const double t0 = d * 86400.0 + b * 60.0;
                    const double t1 = d * 86400.0 + e * 60.0;
                    if (t0 <= cfg.horizon_s)
                        schedule_event(t0, EventKind::occupancy_switch, static_cast<int32_t>(g),
                                       true);
                    if (t1 <= cfg.horizon_s)
                        schedule_event(t1, EventKind::occupancy_switch, static_cast<int32_t>(g),
                                       false);
                }
            }
        }
        // Devices share the groups in proportion to apartment counts.
        double total = 0.0;
        for (const auto& g : cfg.groups) total += g.apartment_count;
        if (total <= 0.0) throw ValidationError("occupancy groups have no apartments");
        double cum = 0.0;
        size_t dev = 0;
        for (size_t g = 0; g < cfg.groups.size(); ++g) {
            cum += cfg.groups[g].apartment_count;
            const size_t until = static_cast<size_t>(
                std::llround(cfg.fleet_size * cum / total));
            for (; dev < until && dev < devices.size(); ++dev)
                devices[dev].group = static_cast<int>(g);
        }
        for (; dev < devices.size(); ++dev) devices[dev].group = static_cast<int>(cfg.groups.size()) - 1;
    }

    // Traffic sources. Devices start at a random phase within one cycle,
    // modeling an unsynchronized fleet; the phase is remembered so a
    // broadcast before a device's first wake lands at that wake.
    if (per_device) {
        for (int i = 0; i < cfg.fleet_size; ++i) {
            const double phase = rng.uniform() * nominal_cycle;
            devices[static_cast<size_t>(i)].cycle_start_t = phase;
            schedule_event(phase, EventKind::cycle_start, i);
        }
    } else if (nominal_lambda > 0.0) {
        schedule_event(rng.exponential(nominal_lambda), EventKind::packet_arrival);
    }
    const double feedback_rate = cfg.feedback_fraction * mu;
    if (feedback_rate > 0.0)
        schedule_event(rng.exponential(feedback_rate), EventKind::feedback_arrival);

    auto device_mode = [&](const Device& d) {
        if (d.control_state.alarm_on || d.local_detect) return energy::Mode::emergency;
        if (d.away) return energy::Mode::long_sleep;
        return energy::Mode::regular;
    };
    auto next_wake = [&](const Device& d, double t) {
        if (!d.started || t < d.cycle_start_t) return d.cycle_start_t;
        const double listen_end = d.cycle_start_t + d.cycle_active_s - kSendSlotS;
        if (t < listen_end) return t;  // radio is listening right now
        return d.cycle_start_t + d.cycle_active_s + d.cycle_sleep_s;
    };
    auto broadcast = [&](double t, bool alarm_on) {
        ++report.events.broadcasts;
        broadcast_t = t;
        for (int i = 0; i < cfg.fleet_size; ++i)
            schedule_event(next_wake(devices[static_cast<size_t>(i)], t),
                           EventKind::control_deliver, i, alarm_on);
    };

    while (!events.empty() && events.top().t <= cfg.horizon_s) {
        const Event ev = events.top();
        events.pop();

        switch (ev.kind) {
            case EventKind::emergency_start: {
                for (int i = 0; i < cfg.emergency->affected_devices && i < cfg.fleet_size; ++i)
                    devices[static_cast<size_t>(i)].local_detect = true;
                broadcast(ev.t, true);
                break;
            }
            case EventKind::emergency_end: {
                for (auto& d : devices) d.local_detect = false;
                broadcast(ev.t, false);
                break;
            }
            case EventKind::occupancy_switch: {
                group_away[static_cast<size_t>(ev.index)] = ev.flag;
                ++report.events.occupancy_switches;
                break;
            }
            case EventKind::control_deliver: {
                auto& d = devices[static_cast<size_t>(ev.index)];
                const protocol::ControlMessage msg{protocol::ControlKind::alarm,
                                                   ev.flag ? protocol::kAlarmOn
                                                           : protocol::kAlarmOff};
                if (auto next = protocol::apply_control(d.control_state, msg)) {
                    d.control_state = *next;
                    ++report.events.controls_delivered;
                }
                if (broadcast_t >= 0.0)
                    report.max_broadcast_latency_s =
                        std::max(report.max_broadcast_latency_s, ev.t - broadcast_t);
                break;
            }
            case EventKind::cycle_start: {
                auto& d = devices[static_cast<size_t>(ev.index)];
                if (d.started) {
                    // Book the cycle that just completed.
                    double e = 0.0;
                    switch (d.cycle_mode) {
                        case energy::Mode::regular:
                            e = cycle_mwh_regular;
                            ++report.cycles_regular;
                            break;
                        case energy::Mode::emergency:
                            e = cycle_mwh_emergency;
                            ++report.cycles_emergency;
                            break;
                        case energy::Mode::long_sleep:
                            e = cycle_mwh_long_sleep;
                            ++report.cycles_long_sleep;
                            break;
                    }
                    d.energy_mwh += e;
                }
                d.started = true;
                if (d.group >= 0) d.away = group_away[static_cast<size_t>(d.group)];
                d.cycle_mode = device_mode(d);
                d.cycle_start_t = ev.t;
                switch (d.cycle_mode) {
                    case energy::Mode::regular:
                        d.cycle_active_s = cfg.active_s;
                        d.cycle_sleep_s = cfg.sleep_s;
                        break;
                    case energy::Mode::emergency:
                        d.cycle_active_s = 1.0;
                        d.cycle_sleep_s = 0.0;
                        break;
                    case energy::Mode::long_sleep:
                        d.cycle_active_s = cfg.active_s;
                        d.cycle_sleep_s = cfg.long_sleep_s;
                        break;
                }
                ++report.events.cycle_starts;
                schedule_event(ev.t + d.cycle_active_s, EventKind::transmit, ev.index);
                schedule_event(ev.t + d.cycle_active_s + d.cycle_sleep_s, EventKind::cycle_start,
                               ev.index);
                break;
            }
            case EventKind::transmit:
            case EventKind::packet_arrival: {
                if (ev.kind == EventKind::transmit) {
                    ++report.events.transmits;
                } else {
                    schedule_event(ev.t + rng.exponential(nominal_lambda),
                                   EventKind::packet_arrival);
                }
                ++report.events.packet_arrivals;
                ++report.packets_sent;
                note_change(ev.t);
                ++n_in_system;
                const QueueEntry entry{ev.t, false};
                if (!server_busy) start_service(ev.t, entry);
                else fifo.push_back(entry);
                break;
            }
            case EventKind::feedback_arrival: {
                schedule_event(ev.t + rng.exponential(feedback_rate),
                               EventKind::feedback_arrival);
                ++report.events.feedback_sent;
                ++report.feedback_sent;
                note_change(ev.t);
                ++n_in_system;
                const QueueEntry entry{ev.t, true};
                if (!server_busy) start_service(ev.t, entry);
                else fifo.push_back(entry);
                break;
            }
            case EventKind::service_done: {
                note_change(ev.t);
                --n_in_system;
                sojourn_sum += ev.t - in_service.arrived_t;
                if (in_service.feedback) {
                    ++report.feedback_served;
                    ++report.events.feedback_served;
                    // Control packet lands on a uniformly random device.
                    if (cfg.fleet_size > 0) (void)rng.below(static_cast<uint64_t>(cfg.fleet_size));
                } else {
                    ++report.packets_served;
                    ++report.events.services;
                }
                if (!fifo.empty()) {
                    const QueueEntry next = fifo.front();
                    fifo.pop_front();
                    start_service(ev.t, next);
                } else {
                    server_busy = false;
                }
                break;
            }
        }
    }

    note_change(cfg.horizon_s);
    report.mean_number_in_system = area / cfg.horizon_s;
    const uint64_t served = report.packets_served + report.feedback_served;
    report.mean_sojourn_s = served > 0 ? sojourn_sum / static_cast<double>(served) : 0.0;
    report.observed_arrival_pps = static_cast<double>(report.packets_sent) / cfg.horizon_s;
    report.packets_in_system = n_in_system;
    if (report.packets_in_system !=
        report.packets_sent + report.feedback_sent - served)
        throw std::logic_error("packet conservation violated");

    if (!per_device) {
        // No per-device processes in the aggregate model: energy follows from
        // the number of completed nominal cycles.
        const auto cycles = static_cast<uint64_t>(std::floor(cfg.horizon_s / nominal_cycle));
        report.cycles_regular = cycles * static_cast<uint64_t>(cfg.fleet_size);
        for (auto& e : report.device_energy_mwh) e = static_cast<double>(cycles) * cycle_mwh_regular;
    } else {
        for (size_t i = 0; i < devices.size(); ++i)
            report.device_energy_mwh[i] = devices[i].energy_mwh;
    }
    report.fleet_energy_mwh = 0.0;
    for (double e : report.device_energy_mwh) report.fleet_energy_mwh += e;
    report.fleet_energy_kwh = report.fleet_energy_mwh * 1e-6;
    const double rate_kwh_per_s = report.fleet_energy_kwh / cfg.horizon_s;
    report.kwh_day = rate_kwh_per_s * 86400.0;
    report.kwh_month = rate_kwh_per_s * cfg.calendar.month_days * 86400.0;
    report.kwh_year = rate_kwh_per_s * cfg.calendar.year_days * 86400.0;
    return report;
}

// Expected analytic values for a run; mismatching rates are a usage error.
struct AnalyticExpectation {
    double arrival_pps = 0.0;
    double effective_service_pps = 0.0;
    std::optional<double> fleet_energy_mwh;
};

struct DeviationSummary {
    double occupancy_rel = 0.0;       // mean number in system vs. load/(1-load)
    double sojourn_rel = 0.0;         // mean sojourn vs. 1/(mu_eff - lambda)
    double littles_residual = 0.0;    // |L - lambda_hat * W| / L
    std::optional<double> energy_rel;
    bool within_tolerance = false;
};

inline DeviationSummary compare_with_analytic(const SimReport& report,
                                              const AnalyticExpectation& expect,
                                              double tolerance = 0.10) {
    if (report.horizon_s <= 0.0 || report.packets_served == 0)
        throw ValidationError("empty sample: nothing to compare");
    const double mu_eff = (1.0 - report.feedback_fraction) * report.nominal_service_pps;
    if (!approx_rel(expect.arrival_pps, report.nominal_arrival_pps, 1e-9) ||
        !approx_rel(expect.effective_service_pps, mu_eff, 1e-9))
        throw ValidationError("expectation does not match the report's configuration");

    const double lambda = expect.arrival_pps;
    const double analytic_n = queueing::system_time_s(lambda, expect.effective_service_pps);
    const double analytic_w = queueing::sojourn_time_s(lambda, expect.effective_service_pps);

    DeviationSummary s;
    s.occupancy_rel = std::fabs(report.mean_number_in_system - analytic_n) / analytic_n;
    s.sojourn_rel = std::fabs(report.mean_sojourn_s - analytic_w) / analytic_w;
    const double served_rate =
        static_cast<double>(report.packets_served + report.feedback_served) / report.horizon_s;
    s.littles_residual =
        std::fabs(report.mean_number_in_system - served_rate * report.mean_sojourn_s) /
        report.mean_number_in_system;
    if (expect.fleet_energy_mwh) {
        s.energy_rel = std::fabs(report.fleet_energy_mwh - *expect.fleet_energy_mwh) /
                       *expect.fleet_energy_mwh;
    }
    s.within_tolerance = s.occupancy_rel <= tolerance && s.sojourn_rel <= tolerance &&
                         s.littles_residual <= tolerance &&
                         (!s.energy_rel || *s.energy_rel <= tolerance);
    return s;
}

}  // namespace fogduty::sim
