#pragma once

// Analytic model of the coordinator bottleneck: the serial link between the
// radio and its host processes one packet at a time, so the fleet's reports
// form a single queue. Covers the plain M/M/1-style queue, a queue with a
// capacity reservation for feedback control traffic, two queues in tandem
// collapsed into one, and the sleep-budget optimizer built on top.

#include <cmath>
#include <string>
#include <vector>

#include "fogduty/common.hpp"

namespace fogduty::queueing {

// A serial hop: line speed and the packet size it carries.
struct LinkSpec {
    double speed_bps = 115200.0;
    double packet_bytes = 25.0;
};

inline void validate(const LinkSpec& link) {
    if (link.speed_bps <= 0.0) throw ValidationError("link speed must be positive");
    if (link.packet_bytes <= 0.0) throw ValidationError("packet size must be positive");
}

// Packets per second the link can push: speed / (8 * packet size).
// Full precision; round only for display.
inline double service_rate_pps(const LinkSpec& link) {
    validate(link);
    return link.speed_bps / (8.0 * link.packet_bytes);
}

// One report per device per duty cycle.
inline double arrival_rate_pps(double fleet_size, double cycle_s) {
    if (fleet_size < 0.0) throw ValidationError("negative fleet size");
    if (cycle_s <= 0.0) throw ValidationError("cycle length must be positive");
    return fleet_size / cycle_s;
}

inline double load(double arrival_pps, double effective_service_pps) {
    if (arrival_pps < 0.0) throw ValidationError("negative arrival rate");
    if (effective_service_pps <= 0.0) throw ValidationError("service rate must be positive");
    return arrival_pps / effective_service_pps;
}

// The queue metric used throughout the reference tables:
//   E{T} = arrival / (service - arrival),
// i.e. load / (1 - load). Dimensionally this is the mean number of packets
// in the system, but the reference figures read it in seconds; see
// sojourn_time_s() for the textbook sojourn time.
inline double system_time_s(double arrival_pps, double effective_service_pps) {
    if (arrival_pps < 0.0) throw ValidationError("negative arrival rate");
    if (effective_service_pps <= 0.0) throw ValidationError("service rate must be positive");
    if (arrival_pps >= effective_service_pps)
        throw InstabilityError("queue unstable: arrival rate " + std::to_string(arrival_pps) +
                               " pct/s >= service rate " + std::to_string(effective_service_pps) +
                               " pct/s");
    return arrival_pps / (effective_service_pps - arrival_pps);
}

// Textbook M/M/1 mean time in system, 1 / (service - arrival).
inline double sojourn_time_s(double arrival_pps, double effective_service_pps) {
    if (arrival_pps >= effective_service_pps)
        throw InstabilityError("queue unstable");
    return 1.0 / (effective_service_pps - arrival_pps);
}

// One queue: external arrivals, raw service rate, and the fraction of that
// rate reserved for feedback control packets. With the feedback reservation
// the queue behaves as an independent queue at (1 - f) * service rate.
struct QueueModel {
    double arrival_rate_pps = 0.0;
    double service_rate_pps = 0.0;
    double feedback_fraction = 0.0;
    double packet_bytes = 0.0;           // informational
    double feedback_packet_bytes = 0.0;  // informational

    double effective_service_rate_pps() const {
        return (1.0 - feedback_fraction) * service_rate_pps;
    }
};

inline void validate(const QueueModel& q) {
    if (q.arrival_rate_pps < 0.0) throw ValidationError("negative arrival rate");
    if (q.service_rate_pps <= 0.0) throw ValidationError("service rate must be positive");
    if (q.feedback_fraction < 0.0 || q.feedback_fraction >= 1.0)
        throw ValidationError("feedback fraction must lie in [0, 1)");
}

struct QueueMetrics {
    double load = 0.0;
    double system_time_s = 0.0;
    double total_time_s = 0.0;  // system time plus the sleep it budgets for
    double savings_pct = 0.0;   // sleep-fraction savings of the associated duty
    double feedback_rate_pps = 0.0;
};

// Metrics of a queue whose service capacity is partly reserved for feedback.
// The feedback rate is f * mu at full precision; displays round it.
inline QueueMetrics feedback_metrics(double arrival_pps, double service_pps,
                                     double feedback_fraction) {
    QueueModel q{arrival_pps, service_pps, feedback_fraction, 0.0, 0.0};
    validate(q);
    const double mu_eff = q.effective_service_rate_pps();
    QueueMetrics m;
    m.load = load(arrival_pps, mu_eff);
    m.system_time_s = system_time_s(arrival_pps, mu_eff);
    m.total_time_s = m.system_time_s;  // no sleep context here
    m.savings_pct = 0.0;
    m.feedback_rate_pps = feedback_fraction * service_pps;
    return m;
}

// Collapse a chain of queues in tandem into one. Each stage forwards every
// packet, so the combined queue sees the original arrivals with a packet
// whose size is the sum of the per-stage sizes; the combined service rate
// follows from the shared line speed. Feedback packet sizes combine the
// same way.
inline QueueModel tandem_combined(double arrival_pps, const std::vector<double>& stage_packet_bytes,
                                  const LinkSpec& link, double feedback_fraction = 0.0,
                                  const std::vector<double>& feedback_stage_bytes = {}) {
    if (stage_packet_bytes.empty()) throw ValidationError("tandem requires at least one stage");
    double combined_bytes = 0.0;
    for (double b : stage_packet_bytes) {
        if (b <= 0.0) throw ValidationError("stage packet size must be positive");
        combined_bytes += b;
    }
    double feedback_bytes = 0.0;
    for (double b : feedback_stage_bytes) {
        if (b <= 0.0) throw ValidationError("feedback packet size must be positive");
        feedback_bytes += b;
    }
    QueueModel q;
    q.arrival_rate_pps = arrival_pps;
    q.service_rate_pps = service_rate_pps({link.speed_bps, combined_bytes});
    q.feedback_fraction = feedback_fraction;
    q.packet_bytes = combined_bytes;
    q.feedback_packet_bytes = feedback_bytes;
    validate(q);
    return q;
}

// Result of the sleep-budget search.
struct SleepOptimum {
    double sleep_s = 0.0;        // largest feasible sleep on the search grid
    double arrival_rate_pps = 0.0;
    QueueMetrics metrics;
};

constexpr double kSleepGridStepS = 0.01;

// Largest sleep duration T on a 0.01 s grid such that the queue stays
// stable and system time + T stays within the budget. Searches downward
// from the budget, so the first hit is the maximum.
inline SleepOptimum max_sleep(double fleet_size, double active_s, double service_pps,
                              double feedback_fraction, double budget_s) {
    if (budget_s <= 0.0) throw ValidationError("budget must be positive");
    if (active_s <= 0.0) throw ValidationError("active duration must be positive");
    if (fleet_size < 0.0) throw ValidationError("negative fleet size");
    QueueModel probe{0.0, service_pps, feedback_fraction, 0.0, 0.0};
    validate(probe);
    const double mu_eff = probe.effective_service_rate_pps();

    for (int k = static_cast<int>(std::round(budget_s / kSleepGridStepS)); k >= 0; --k) {
        const double sleep_s = k * kSleepGridStepS;
        const double lambda = arrival_rate_pps(fleet_size, active_s + sleep_s);
        if (lambda >= mu_eff) continue;
        const double et = system_time_s(lambda, mu_eff);
        if (et + sleep_s > budget_s + 1e-12) continue;
        SleepOptimum out;
        out.sleep_s = sleep_s;
        out.arrival_rate_pps = lambda;
        out.metrics.load = load(lambda, mu_eff);
        out.metrics.system_time_s = et;
        out.metrics.total_time_s = et + sleep_s;
        out.metrics.savings_pct = sleep_fraction_savings_pct(active_s, sleep_s);
        out.metrics.feedback_rate_pps = feedback_fraction * service_pps;
        return out;
    }
    throw InstabilityError("sleep budget infeasible: queue unstable or over budget at every "
                           "grid point");
}

}  // namespace fogduty::queueing
