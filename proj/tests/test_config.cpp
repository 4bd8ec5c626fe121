#include "fogduty/config.hpp"

#include <fstream>
#include <sstream>

#include <catch2/catch.hpp>

#include "fogduty/reference.hpp"

using namespace fogduty;
using namespace fogduty::config;

TEST_CASE("reference configuration parses and validates") {
    const Config cfg = parse(reference::config_text());
    CHECK_NOTHROW(validate(cfg));

    CHECK(cfg.voltage_v == 9.0);
    CHECK(cfg.calendar.month_days == 30.0);
    CHECK(cfg.calendar.year_days == 360.0);

    const auto& reg = cfg.profile("regular");
    CHECK(reg.modules.size() == 6);
    CHECK(reg.sleep_modules.size() == 2);
    CHECK(reg.voltage_v == 9.0);
    CHECK(reg.modules[1].name == "mq2_gas_sensor");
    CHECK(reg.modules[1].current_active_ma == 160.0);
    CHECK(reg.modules[5].response_time_s == Approx(1.9992));

    const auto& em = cfg.profile("emergency");
    CHECK(em.modules.size() == 8);
    CHECK(em.sleep_modules.empty());

    CHECK(cfg.fleet.devices == 300);
    CHECK(cfg.fleet.active_s == 2.0);
    CHECK(cfg.fleet.sleep_s == 3.0);
    CHECK(cfg.link.speed_bps == 115200.0);
    CHECK(cfg.link.radio_packet_bytes == 25.0);
    CHECK(cfg.link.mist_packet_bytes == 10.0);
    CHECK(cfg.link.control_packet_bytes == 5.0);
    CHECK(cfg.queue.budget_s == 3.0);

    REQUIRE(cfg.groups.size() == 5);
    CHECK(cfg.groups[0].apartment_count == 150);
    CHECK(cfg.groups[0].schedules.size() == 2);
    REQUIRE(cfg.groups[0].away_hours_override.has_value());
    CHECK(*cfg.groups[0].away_hours_override == 9.5);
    CHECK_FALSE(cfg.groups[2].away_hours_override.has_value());
    CHECK(cfg.groups[4].schedules[0].entry_time.minutes == 1440);

    CHECK(cfg.sim.seed == 1);
    CHECK(cfg.sim.horizon_s == 10000.0);
    CHECK(cfg.sim.arrival_model == "poisson");
}

TEST_CASE("shipped reference file matches the built-in text") {
    std::ifstream in(FOGDUTY_SOURCE_DIR "/data/reference.cfg", std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == reference::config_text());
}

TEST_CASE("parse errors carry the offending line") {
    try {
        parse("[energy]\nvoltage_v = 9\nbogus line without equals\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("malformed configs are rejected with diagnostics") {
    CHECK_THROWS_AS(parse("[energy]\nvoltage_v = loud\n"), ConfigError);
    CHECK_THROWS_AS(parse("[energy]\nwattage = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse("[mystery]\nkey = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[profile p]\nmodule = just_two 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[group g]\nschedule = 08:00\n"), ConfigError);
    CHECK_THROWS_AS(parse("[group g]\nschedule = 08:00 26:00\n"), ConfigError);
    CHECK_THROWS_AS(parse("[profile]\nmodule = a 1 0.000277 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[simulation]\narrival_model = tide\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
    const Config cfg = parse("# header\n\n[fleet]\ndevices = 12  # trailing\n");
    CHECK(cfg.fleet.devices == 12);
}

TEST_CASE("schedules may restrict weekdays") {
    const Config cfg = parse("[group g]\nschedule = 08:00 17:00 mon,wed,fri\n");
    REQUIRE(cfg.groups.size() == 1);
    CHECK(cfg.groups[0].schedules[0].weekdays == 0b10101u);
    CHECK_THROWS_AS(parse("[group g]\nschedule = 08:00 17:00 caturday\n"), ConfigError);
}

TEST_CASE("validation rejects configs the analyses cannot use") {
    // No devices.
    Config empty_fleet = parse(reference::config_text());
    empty_fleet.fleet.devices = 0;
    CHECK_THROWS_AS(validate(empty_fleet), ValidationError);

    // Missing built-in profile.
    Config no_profile = parse(reference::config_text());
    no_profile.profiles.erase("emergency");
    CHECK_THROWS_AS(validate(no_profile), ValidationError);

    // Regular duty beyond the response limit.
    Config slow = parse(reference::config_text());
    slow.fleet.sleep_s = 4.0;
    CHECK_THROWS_AS(validate(slow), ValidationError);

    // Feedback fraction out of range.
    Config fb = parse(reference::config_text());
    fb.sim.feedback_fraction = 1.0;
    CHECK_THROWS_AS(validate(fb), ValidationError);
}
