// Acceptance suite: end-to-end checks of the reference scenario against the
// golden figures, one line per criterion. Exits nonzero if any criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fogduty/config.hpp"
#include "fogduty/protocol.hpp"
#include "fogduty/reference.hpp"
#include "fogduty/reports.hpp"
#include "fogduty/sim.hpp"

namespace {

using namespace fogduty;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& why) {
        if (!cond && detail.empty()) detail = why;
        ok = ok && cond;
    }
};

std::string fmtd(const char* fmt, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

const config::Config& cfg() {
    static const config::Config c = config::parse(reference::config_text());
    return c;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Single-device energy table within 0.5% per cell, under a second.
Check criterion_energy_table() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto diff = reports::diff_table("table03", cfg());
    const double secs = elapsed_s(t0);
    c.expect(diff.pass(), reports::deviation_report(diff));
    c.expect(secs < 1.0, fmtd("took %.3f s", secs));
    if (c.ok) c.detail = fmtd("max cell deviation %.3f%%, %.0f ms", 100.0 * diff.max_deviation,
                              1000.0 * secs);
    return c;
}

// 2. 300-device fleet table; the yearly column is the headline number.
Check criterion_fleet_table() {
    Check c;
    const auto& reg = cfg().profile("regular");
    const double year0 =
        energy::consumption_kwh(reg, {2.0, 0.0, energy::Mode::regular}, energy::Period::year,
                                300.0, cfg().calendar);
    const double year3 =
        energy::consumption_kwh(reg, {2.0, 3.0, energy::Mode::regular}, energy::Period::year,
                                300.0, cfg().calendar);
    c.expect(std::fabs(year0 - 2536.22) / 2536.22 < 0.005,
             fmtd("year at T=0: %.2f vs 2536.22", year0));
    c.expect(std::fabs(year3 - 1014.50) / 1014.50 < 0.005,
             fmtd("year at T=3: %.2f vs 1014.50", year3));
    const auto diff = reports::diff_table("table04", cfg());
    c.expect(diff.pass(), reports::deviation_report(diff));
    if (c.ok) c.detail = fmtd("year %.2f -> %.2f kWh", year0, year3);
    return c;
}

// 3. Emergency-mix savings within 0.1 percentage points.
Check criterion_emergency_mix() {
    Check c;
    const auto& reg = cfg().profile("regular");
    const auto& em = cfg().profile("emergency");
    const energy::DutyCycle duty{2.0, 3.0, energy::Mode::regular};
    const std::vector<std::pair<double, double>> rows = {
        {0.01, 58.25}, {0.02, 56.49}, {0.05, 51.24}, {0.10, 42.48}};
    double worst = 0.0;
    for (const auto& [f, want] : rows) {
        const double got = energy::mixed_mode_savings_pct(reg, em, duty, f);
        worst = std::max(worst, std::fabs(got - want));
        c.expect(std::fabs(got - want) <= 0.1,
                 fmtd("f=%.2f: got %.3f%% vs %.2f%%", f, got, want));
    }
    if (c.ok) c.detail = fmtd("worst gap %.3f pp", worst);
    return c;
}

// 4. Queue metrics exactly at printed precision.
Check criterion_queue_metrics() {
    Check c;
    const auto built = reports::build_table("table06", cfg());
    const std::vector<std::string> lambdas{"150", "100", "75", "60"};
    const std::vector<std::string> times{"352", "210", "150", "116"};
    const std::vector<std::string> loads{"0.260", "0.174", "0.130", "0.104"};
    for (size_t r = 0; r < 4; ++r) {
        c.expect(built.table.rows[r][1].text == lambdas[r],
                 "arrival " + built.table.rows[r][1].text + " vs " + lambdas[r]);
        c.expect(built.table.rows[r][2].text == times[r],
                 "system time " + built.table.rows[r][2].text + " vs " + times[r]);
        c.expect(built.table.rows[r][3].text == loads[r],
                 "load " + built.table.rows[r][3].text + " vs " + loads[r]);
    }
    if (c.ok) c.detail = "lambda, system time, and load match verbatim";
    return c;
}

struct OptRow {
    double f, t_star, savings, system_time;
};

Check optimizer_rows(double mu, const std::vector<OptRow>& rows) {
    Check c;
    double worst_ms = 0.0;
    for (const auto& row : rows) {
        const auto opt = queueing::max_sleep(300.0, 2.0, mu, row.f, 3.0);
        c.expect(std::fabs(opt.sleep_s - row.t_star) < 1e-9,
                 fmtd("f=%.2f: T*=%.2f vs %.2f", row.f, opt.sleep_s, row.t_star));
        c.expect(std::fabs(round_to(opt.metrics.savings_pct, 1) - row.savings) < 1e-9,
                 fmtd("f=%.2f: S=%.2f vs %.1f", row.f, opt.metrics.savings_pct, row.savings));
        const double gap = std::fabs(opt.metrics.system_time_s - row.system_time);
        worst_ms = std::max(worst_ms, 1000.0 * gap);
        c.expect(gap <= 0.002, fmtd("f=%.2f: E{T}=%.4f vs %.4f", row.f,
                                    opt.metrics.system_time_s, row.system_time));
    }
    if (c.ok) c.detail = fmtd("T* and S exact, E{T} within %.2f ms", worst_ms);
    return c;
}

// 5. Feedback sleep optimizer rows.
Check criterion_feedback_optimizer() {
    return optimizer_rows(576.0, {{0.0, 2.88, 59.0, 0.1195},
                                  {0.01, 2.87, 58.9, 0.1209},
                                  {0.05, 2.87, 58.9, 0.1269},
                                  {0.10, 2.86, 58.8, 0.1353}});
}

// 6. Mist tandem rows at the whole-packet combined rate.
Check criterion_mist_tandem() {
    const auto model = queueing::tandem_combined(150.0, {25.0, 10.0}, {115200.0, 25.0}, 0.0,
                                                 {5.0, 25.0});
    Check c;
    const double mu = std::round(model.service_rate_pps);
    c.expect(mu == 411.0, fmtd("combined rate %.0f vs 411", mu));
    auto rows = optimizer_rows(mu, {{0.0, 2.82, 58.5, 0.1785},
                                    {0.01, 2.81, 58.4, 0.1810},
                                    {0.05, 2.80, 58.3, 0.1908},
                                    {0.10, 2.79, 58.2, 0.2038}});
    c.expect(rows.ok, rows.detail);
    if (c.ok) c.detail = "mu_CM = 411 pct/s; " + rows.detail;
    return c;
}

// 7. Occupancy scheduling: condo savings, the sweep, and yearly deltas.
Check criterion_scheduling() {
    Check c;
    const double t_sav = reports::schedule_t_savings_pct(cfg());
    const auto base = reports::fleet_baseline(cfg());
    const auto at4 = schedule::condominium_savings(cfg().groups, t_sav, 4.0, 2.0, base);
    c.expect(std::fabs(at4.savings_pct - 61.51) <= 0.05,
             fmtd("E at LS=4: %.3f vs 61.51", at4.savings_pct));
    c.expect(std::fabs(at4.extra_savings_pct - 3.11) <= 0.05,
             fmtd("ES at LS=4: %.3f vs 3.11", at4.extra_savings_pct));

    const std::vector<double> ls{4.0, 8.0, 10.0, 13.0, 18.0, 28.0, 58.0};
    const std::vector<double> want_e{61.51, 66.52, 67.78, 69.03, 70.29, 71.54, 72.80};
    const std::vector<double> want_year_delta{78.88,  205.94, 237.90, 269.60,
                                              301.56, 333.26, 362.68};
    double worst_e = 0.0, worst_delta = 0.0;
    for (size_t i = 0; i < ls.size(); ++i) {
        const auto b = schedule::condominium_savings(cfg().groups, t_sav, ls[i], 2.0, base);
        worst_e = std::max(worst_e, std::fabs(b.savings_pct - want_e[i]));
        c.expect(std::fabs(b.savings_pct - want_e[i]) <= 0.05,
                 fmtd("E at LS=%.0f: %.3f vs %.2f", ls[i], b.savings_pct, want_e[i]));
        const double rel = std::fabs(b.year.delta_kwh - want_year_delta[i]) / want_year_delta[i];
        worst_delta = std::max(worst_delta, rel);
        c.expect(rel <= 0.01, fmtd("year delta at LS=%.0f: %.2f vs %.2f", ls[i],
                                   b.year.delta_kwh, want_year_delta[i]));
    }
    if (c.ok)
        c.detail = fmtd("E within %.3f pp, yearly deltas within %.2f%%", worst_e,
                        100.0 * worst_delta);
    return c;
}

// 8. Codec round trips: 10,000 randomized cases per frame type.
Check criterion_codec() {
    Check c;
    std::mt19937_64 rng(424242);
    const int n = 10000;
    for (int i = 0; i < n && c.ok; ++i) {
        protocol::SensorFrame sf;
        sf.source_addr = static_cast<uint16_t>(rng());
        sf.readings = {static_cast<uint8_t>(rng()), static_cast<uint8_t>(rng()),
                       static_cast<uint16_t>(rng()), static_cast<uint8_t>(rng()),
                       static_cast<uint8_t>(rng()), static_cast<uint8_t>(rng())};
        const auto sb = protocol::encode(sf);
        c.expect(sb.size() == protocol::kSensorFrameBytes, "sensor frame length drifted");
        const auto sd = protocol::decode_sensor_frame(sb);
        c.expect(sd && sd.value == sf, "sensor frame round trip failed");

        protocol::ControlMessage cm;
        switch (rng() % 4) {
            case 0:
                cm = {protocol::ControlKind::alarm,
                      (rng() % 2) ? protocol::kAlarmOn : protocol::kAlarmOff};
                break;
            case 1:
                cm = {protocol::ControlKind::sleep_time, static_cast<uint8_t>(rng() % 4)};
                break;
            case 2:
                cm = {protocol::ControlKind::long_sleep, static_cast<uint8_t>(rng() % 256)};
                break;
            default:
                cm = {protocol::ControlKind::mode, static_cast<uint8_t>(rng() % 3)};
        }
        const auto cb = protocol::encode(cm);
        c.expect(cb.size() == protocol::kControlMessageBytes, "control message length drifted");
        const auto cd = protocol::decode_control_message(cb);
        c.expect(cd && cd.value == cm, "control message round trip failed");

        const protocol::ControlPacket cp{static_cast<uint16_t>(rng()), cm};
        const auto pb = protocol::encode(cp);
        c.expect(pb.size() == protocol::kControlPacketBytes, "control packet length drifted");
        const auto pd = protocol::decode_control_packet(pb);
        c.expect(pd && pd.value == cp, "control packet round trip failed");

        protocol::RadioFrame rf;
        rf.frame_type = static_cast<uint8_t>(rng());
        rf.source_addr64 = rng();
        rf.source_addr16 = static_cast<uint16_t>(rng());
        rf.options = static_cast<uint8_t>(rng());
        for (auto& b : rf.payload) b = static_cast<uint8_t>(rng());
        const auto rb = protocol::encode(rf);
        c.expect(rb.size() == protocol::kRadioFrameBytes, "radio frame length drifted");
        const auto rd = protocol::decode_radio_frame(rb);
        c.expect(rd && rd.value == rf, "radio frame round trip failed");
    }
    if (c.ok) c.detail = fmtd("%.0f cases per frame type, all identical", double(n));
    return c;
}

// 9. Simulation vs. analytics over five seeds.
Check criterion_sim_vs_analytic() {
    Check c;
    sim::SimConfig sc;
    sc.fleet_size = 300;
    sc.active_s = 2.0;
    sc.sleep_s = 0.0;  // lambda = 150
    sc.link = {115200.0, 25.0};
    sc.regular_profile = cfg().profile("regular");
    sc.emergency_profile = cfg().profile("emergency");
    sc.horizon_s = 10000.0;

    const double target_n = 0.352;
    double worst_occ = 0.0, worst_little = 0.0, worst_secs = 0.0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        sc.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = sim::run(sc);
        const double secs = elapsed_s(t0);
        worst_secs = std::max(worst_secs, secs);
        c.expect(secs < 30.0, fmtd("seed run took %.1f s", secs));

        const double occ = std::fabs(r.mean_number_in_system - target_n) / target_n;
        worst_occ = std::max(worst_occ, occ);
        c.expect(occ <= 0.10, fmtd("seed occupancy %.4f vs %.3f", r.mean_number_in_system,
                                   target_n));

        const double served_rate = static_cast<double>(r.packets_served) / r.horizon_s;
        const double little =
            std::fabs(r.mean_number_in_system - served_rate * r.mean_sojourn_s) /
            r.mean_number_in_system;
        worst_little = std::max(worst_little, little);
        c.expect(little < 0.05, fmtd("Little residual %.3f", little));
    }
    if (c.ok)
        c.detail = fmtd("occupancy within %.1f%%, Little residual < %.2f%%, slowest run %.2f s",
                        100.0 * worst_occ, 100.0 * worst_little, worst_secs);
    return c;
}

// 10. Simulated 24 h device energy vs. the analytic day figure.
Check criterion_sim_energy() {
    Check c;
    sim::SimConfig sc;
    sc.fleet_size = 1;
    sc.active_s = 2.0;
    sc.sleep_s = 3.0;
    sc.arrival_model = sim::ArrivalModel::deterministic_cycle;
    sc.service_model = sim::ServiceModel::deterministic;
    sc.link = {115200.0, 25.0};
    sc.regular_profile = cfg().profile("regular");
    sc.emergency_profile = cfg().profile("emergency");
    sc.seed = 11;
    sc.horizon_s = 86400.0;
    const auto r = sim::run(sc);
    const double rel = std::fabs(r.fleet_energy_kwh - 9.4e-3) / 9.4e-3;
    c.expect(rel < 0.005, fmtd("day energy %.6g kWh vs 9.4e-3", r.fleet_energy_kwh));
    if (c.ok) c.detail = fmtd("%.6g kWh, %.2f%% from the day figure", r.fleet_energy_kwh,
                              100.0 * rel);
    return c;
}

// 11. Property checks: monotone savings, diminishing Long Sleep returns,
//     optimizer maximality, deterministic replay.
Check criterion_properties() {
    Check c;
    const auto& reg = cfg().profile("regular");

    double prev = -1.0;
    for (double t = 0.0; t <= 3.0; t += 0.25) {
        const double s = energy::savings_vs_baseline_pct({2.0, t, energy::Mode::regular},
                                                         {2.0, 0.0, energy::Mode::regular}, reg);
        c.expect(s > prev, fmtd("savings not increasing at T=%.2f", t));
        prev = s;
    }

    const double t_sav = reports::schedule_t_savings_pct(cfg());
    const auto es = [&](double ls) {
        return schedule::condominium_savings(cfg().groups, t_sav, ls).extra_savings_pct;
    };
    const double gain = es(58.0) - es(28.0);
    c.expect(std::fabs(gain - 1.26) <= 0.1, fmtd("ES(58)-ES(28) = %.3f vs 1.26", gain));

    for (const double mu : {576.0, 411.0, 500.0}) {
        for (const double f : {0.0, 0.01, 0.10}) {
            const auto opt = queueing::max_sleep(300.0, 2.0, mu, f, 3.0);
            c.expect(opt.metrics.total_time_s <= 3.0 + 1e-9, "optimizer exceeded the budget");
            const double next_t = opt.sleep_s + queueing::kSleepGridStepS;
            if (next_t <= 3.0) {
                const double lam = 300.0 / (2.0 + next_t);
                const double mu_eff = (1.0 - f) * mu;
                const bool next_ok = lam < mu_eff &&
                                     queueing::system_time_s(lam, mu_eff) + next_t <= 3.0 + 1e-12;
                c.expect(!next_ok, "optimizer result is not grid-maximal");
            }
        }
    }

    sim::SimConfig sc;
    sc.fleet_size = 50;
    sc.active_s = 2.0;
    sc.sleep_s = 3.0;
    sc.arrival_model = sim::ArrivalModel::deterministic_cycle;
    sc.link = {115200.0, 25.0};
    sc.regular_profile = reg;
    sc.emergency_profile = cfg().profile("emergency");
    sc.seed = 99;
    sc.horizon_s = 600.0;
    c.expect(sim::run(sc).to_csv() == sim::run(sc).to_csv(), "replay differs under a fixed seed");

    if (c.ok) c.detail = fmtd("monotone savings, LS gain %.3f pp, maximal optimizer, "
                              "deterministic replay", gain);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"energy table (T = 0..3) within 0.5% per cell in under 1 s", criterion_energy_table},
        {"300-device fleet table within 0.5%", criterion_fleet_table},
        {"emergency-mix savings within 0.1 pp", criterion_emergency_mix},
        {"queue metrics table exact at printed precision", criterion_queue_metrics},
        {"feedback sleep optimizer rows", criterion_feedback_optimizer},
        {"mist tandem optimizer rows", criterion_mist_tandem},
        {"occupancy scheduling and Long Sleep sweep", criterion_scheduling},
        {"codec round-trip identity, 10k cases per frame", criterion_codec},
        {"simulation matches M/M/1 analytics over 5 seeds", criterion_sim_vs_analytic},
        {"simulated 24 h device energy matches the day figure", criterion_sim_energy},
        {"property suite: monotonicity, diminishing returns, maximality, determinism",
         criterion_properties},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %zu: %s%s%s\n", result.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        if (!result.ok) ++failures;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
