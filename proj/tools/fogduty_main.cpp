// fogduty: duty-cycle energy, queueing, and occupancy analytics for IoT
// fleets behind a fog coordinator, plus a seeded fleet simulator.
//
// Subcommands:
//   analyze-energy     device and fleet consumption tables
//   analyze-queue      coordinator queue metrics and sleep optimization
//   analyze-schedule   occupancy groups and Long Sleep savings
//   simulate           discrete-event fleet simulation
//   reproduce-tables   emit every reference table and diff it against the
//                      bundled golden figures

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fogduty/config.hpp"
#include "fogduty/reference.hpp"
#include "fogduty/reports.hpp"
#include "fogduty/sim.hpp"

namespace {

namespace fs = std::filesystem;
using fogduty::config::Config;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    bool precise = false;
};

Config load_config(const CommonOpts& opts) {
    Config cfg = opts.config_path.empty()
                     ? fogduty::config::parse(fogduty::reference::config_text())
                     : fogduty::config::parse_file(opts.config_path);
    fogduty::config::validate(cfg);
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void emit_table(const CommonOpts& opts, const fogduty::reports::BuiltTable& built) {
    fs::create_directories(opts.out_dir);
    if (opts.format == "json") {
        write_file(fs::path(opts.out_dir) / (built.table.name + ".json"),
                   fogduty::reports::to_json(built.table).dump(2) + "\n");
    } else {
        write_file(fs::path(opts.out_dir) / (built.table.name + ".csv"),
                   fogduty::reports::to_csv(built.table));
    }
}

void warn_overrides(const Config& cfg) {
    for (const auto& note : fogduty::reports::schedule_override_notes(cfg))
        std::cerr << "warning: " << note << "\n";
}

int run_tables(const CommonOpts& opts, const std::vector<std::string>& names) {
    const Config cfg = load_config(opts);
    for (const auto& name : names)
        emit_table(opts, fogduty::reports::build_table(name, cfg, opts.precise));
    return 0;
}

int run_analyze_schedule(const CommonOpts& opts, std::optional<double> ls) {
    Config cfg = load_config(opts);
    if (ls) cfg.fleet.long_sleep_s = *ls;
    warn_overrides(cfg);
    for (const auto& name : {"table09", "table10", "table11"})
        emit_table(opts, fogduty::reports::build_table(name, cfg, opts.precise));

    const double t_sav = fogduty::reports::schedule_t_savings_pct(cfg);
    const auto breakdown = fogduty::schedule::condominium_savings(
        cfg.groups, t_sav, cfg.fleet.long_sleep_s, cfg.fleet.active_s,
        fogduty::reports::fleet_baseline(cfg));
    std::printf("condominium savings E = %.2f %%, extra savings ES = %.2f %% (LS = %g s, "
                "regular-sleep savings %.1f %%)\n",
                breakdown.savings_pct, breakdown.extra_savings_pct, cfg.fleet.long_sleep_s,
                t_sav);
    return 0;
}

int run_reproduce(const CommonOpts& opts, const std::string& only_table) {
    const Config cfg = load_config(opts);
    warn_overrides(cfg);
    fs::create_directories(opts.out_dir);

    std::vector<std::string> names = fogduty::reports::table_names();
    if (!only_table.empty()) names = {only_table};

    std::string deviations;
    bool all_pass = true;
    for (const auto& name : names) {
        const auto built = fogduty::reports::build_table(name, cfg, opts.precise);
        emit_table(opts, built);
        write_file(fs::path(opts.out_dir) / (name + ".golden.csv"),
                   fogduty::reports::golden_csv(name));
        const auto diff = fogduty::reports::diff_against_golden(
            built.table, fogduty::reports::golden_csv(name), built.tolerances);
        const auto report = fogduty::reports::deviation_report(diff);
        std::fputs(report.c_str(), stdout);
        deviations += report;
        all_pass = all_pass && diff.pass();
    }
    write_file(fs::path(opts.out_dir) / "deviations.txt", deviations);
    std::printf("%s\n", all_pass ? "all tables match the golden figures"
                                 : "some tables deviate from the golden figures");
    return all_pass ? 0 : 1;
}

nlohmann::json report_to_json(const fogduty::sim::SimReport& r) {
    nlohmann::json j;
    j["horizon_s"] = r.horizon_s;
    j["seed"] = r.seed;
    j["nominal_arrival_pps"] = r.nominal_arrival_pps;
    j["nominal_service_pps"] = r.nominal_service_pps;
    j["feedback_fraction"] = r.feedback_fraction;
    j["saturated"] = r.saturated;
    j["packets_sent"] = r.packets_sent;
    j["packets_served"] = r.packets_served;
    j["feedback_sent"] = r.feedback_sent;
    j["feedback_served"] = r.feedback_served;
    j["packets_in_system"] = r.packets_in_system;
    j["mean_number_in_system"] = r.mean_number_in_system;
    j["mean_sojourn_s"] = r.mean_sojourn_s;
    j["observed_arrival_pps"] = r.observed_arrival_pps;
    j["cycles_regular"] = r.cycles_regular;
    j["cycles_emergency"] = r.cycles_emergency;
    j["cycles_long_sleep"] = r.cycles_long_sleep;
    j["fleet_energy_mwh"] = r.fleet_energy_mwh;
    j["fleet_energy_kwh"] = r.fleet_energy_kwh;
    j["kwh_day"] = r.kwh_day;
    j["kwh_month"] = r.kwh_month;
    j["kwh_year"] = r.kwh_year;
    j["max_broadcast_latency_s"] = r.max_broadcast_latency_s;
    j["device_energy_mwh"] = r.device_energy_mwh;
    return j;
}

int run_simulate(const CommonOpts& opts, std::optional<uint64_t> seed,
                 std::optional<double> horizon, std::optional<double> feedback) {
    const Config cfg = load_config(opts);

    fogduty::sim::SimConfig sc;
    sc.fleet_size = cfg.fleet.devices;
    sc.active_s = cfg.fleet.active_s;
    sc.sleep_s = cfg.fleet.sleep_s;
    sc.long_sleep_s = cfg.fleet.long_sleep_s;
    sc.arrival_model = cfg.sim.arrival_model == "cycle"
                           ? fogduty::sim::ArrivalModel::deterministic_cycle
                           : fogduty::sim::ArrivalModel::poisson_approx;
    sc.service_model = cfg.sim.service_model == "deterministic"
                           ? fogduty::sim::ServiceModel::deterministic
                           : fogduty::sim::ServiceModel::exponential;
    sc.link = {cfg.link.speed_bps, cfg.link.radio_packet_bytes};
    sc.feedback_fraction = feedback.value_or(cfg.sim.feedback_fraction);
    if (cfg.sim.emergency)
        sc.emergency = fogduty::sim::EmergencyScenario{cfg.sim.emergency->start_s,
                                                       cfg.sim.emergency->duration_s,
                                                       cfg.sim.emergency->affected_devices};
    if (sc.arrival_model == fogduty::sim::ArrivalModel::deterministic_cycle)
        sc.groups = cfg.groups;
    sc.regular_profile = cfg.profile("regular");
    sc.emergency_profile = cfg.profile("emergency");
    sc.calendar = cfg.calendar;
    sc.seed = seed.value_or(cfg.sim.seed);
    sc.horizon_s = horizon.value_or(cfg.sim.horizon_s);

    const auto report = fogduty::sim::run(sc);

    fs::create_directories(opts.out_dir);
    if (opts.format == "json")
        write_file(fs::path(opts.out_dir) / "simulation.json", report_to_json(report).dump(2) + "\n");
    else
        write_file(fs::path(opts.out_dir) / "simulation.csv", report.to_csv());

    std::printf("simulated %.0f s, seed %llu: %llu packets sent, %llu served, "
                "mean in system %.4f, mean sojourn %.4f s, fleet energy %.6g kWh%s\n",
                report.horizon_s, static_cast<unsigned long long>(report.seed),
                static_cast<unsigned long long>(report.packets_sent),
                static_cast<unsigned long long>(report.packets_served),
                report.mean_number_in_system, report.mean_sojourn_s, report.fleet_energy_kwh,
                report.saturated ? " [saturated]" : "");

    if (sc.arrival_model == fogduty::sim::ArrivalModel::poisson_approx &&
        sc.service_model == fogduty::sim::ServiceModel::exponential && !report.saturated &&
        report.packets_served > 0) {
        const auto dev = fogduty::sim::compare_with_analytic(
            report, {report.nominal_arrival_pps,
                     (1.0 - report.feedback_fraction) * report.nominal_service_pps,
                     std::nullopt});
        std::printf("analytic comparison: occupancy dev %.2f %%, sojourn dev %.2f %%, "
                    "Little residual %.2f %%\n",
                    100.0 * dev.occupancy_rel, 100.0 * dev.sojourn_rel,
                    100.0 * dev.littles_residual);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duty-cycle analytics and simulation for fog-coordinated IoT fleets"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--config", opts.config_path, "configuration file (default: built-in reference)")
        ->envname("FOGDUTY_CONFIG");
    app.add_option("--out", opts.out_dir, "output directory");
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--precise", opts.precise, "emit full-precision numbers");
    app.fallthrough();

    auto* energy_cmd = app.add_subcommand("analyze-energy", "device and fleet energy tables");
    std::string energy_table;
    energy_cmd->add_option("--table", energy_table, "single table to emit (table01..table05)");

    auto* queue_cmd = app.add_subcommand("analyze-queue", "coordinator queue tables");
    std::string queue_table;
    queue_cmd->add_option("--table", queue_table, "single table to emit (table06..table08)");

    auto* sched_cmd = app.add_subcommand("analyze-schedule", "occupancy and Long Sleep tables");
    double ls_value = -1.0;
    sched_cmd->add_option("--ls", ls_value, "Long Sleep duration in seconds");

    auto* sim_cmd = app.add_subcommand("simulate", "run the fleet simulator");
    uint64_t seed = 0;
    double horizon = -1.0, feedback = -1.0;
    auto* seed_opt = sim_cmd->add_option("--seed", seed, "simulation seed");
    auto* horizon_opt = sim_cmd->add_option("--horizon", horizon, "horizon in seconds");
    auto* feedback_opt = sim_cmd->add_option("--feedback", feedback, "feedback fraction of mu");

    auto* repro_cmd =
        app.add_subcommand("reproduce-tables", "emit all reference tables and diff vs golden");
    std::string repro_table;
    repro_cmd->add_option("--table", repro_table, "single table to reproduce");

    try {
        app.parse(argc, argv);

        if (energy_cmd->parsed()) {
            std::vector<std::string> names{"table01", "table02", "table03", "table04", "table05"};
            if (!energy_table.empty()) names = {energy_table};
            return run_tables(opts, names);
        }
        if (queue_cmd->parsed()) {
            std::vector<std::string> names{"table06", "table07", "table08"};
            if (!queue_table.empty()) names = {queue_table};
            return run_tables(opts, names);
        }
        if (sched_cmd->parsed()) {
            return run_analyze_schedule(opts, ls_value >= 0.0 ? std::optional<double>(ls_value)
                                                              : std::nullopt);
        }
        if (sim_cmd->parsed()) {
            return run_simulate(opts,
                                seed_opt->count() ? std::optional<uint64_t>(seed) : std::nullopt,
                                horizon_opt->count() ? std::optional<double>(horizon)
                                                     : std::nullopt,
                                feedback_opt->count() ? std::optional<double>(feedback)
                                                      : std::nullopt);
        }
        if (repro_cmd->parsed()) return run_reproduce(opts, repro_table);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const fogduty::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const fogduty::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const fogduty::InstabilityError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
