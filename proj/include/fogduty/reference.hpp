#pragma once

// The bundled reference scenario: two built-in device profiles, a 300-device
// fleet behind one coordinator, and five occupancy groups. `reproduce-tables`
// and the golden regression suite run against this configuration; a copy is
// shipped as data/reference.cfg for editing.

namespace fogduty::reference {

inline const char* config_text() {
    return R"(# FogDuty reference configuration.
# Profiles, fleet, link, and occupancy groups for the bundled reference
# scenario used by `fogduty reproduce-tables`.

[energy]
voltage_v = 9
month_days = 30
year_days = 360

[profile regular]
# module = <name> <current_ma> <current_mah_per_s> <response_time_s|T>
# A response time of T marks a sleep-mode draw: it accrues for the duty
# cycle's sleep duration instead of a fixed per-cycle response time.
module = dht11_air_sensor 0.3 8.33e-5 2
module = mq2_gas_sensor 160 4.44e-2 1
module = flame_sensor 0.4 1.11e-4 1
module = mcu_active 0.3 8.33e-5 2
module = xbee_send 33 9.17e-3 0.0008
module = xbee_receive 28 7.78e-3 1.9992
module = mcu_sleep 1e-4 2.78e-8 T
module = xbee_sleep 1e-4 2.78e-8 T

[profile emergency]
# Constant watch: one report per second, alarm actuators running.
module = dht11_air_sensor 0.3 8.33e-5 1
module = mq2_gas_sensor 160 4.44e-2 1
module = flame_sensor 0.4 1.11e-4 1
module = mcu_active 0.3 8.33e-5 1
module = xbee_send 33 9.17e-3 0.0008
module = xbee_receive 28 7.78e-3 0.9992
module = buzzer 25 6.94e-3 1
module = led 20 5.56e-3 1

[fleet]
devices = 300
active_s = 2
sleep_s = 3
long_sleep_s = 4
emergency_active_s = 1

[link]
speed_bps = 115200
radio_packet_bytes = 25
mist_packet_bytes = 10
control_packet_bytes = 5

[queue]
budget_s = 3

# Occupancy groups. Groups 1 and 2 carry away-hour overrides: the reference
# totals (9:30 and 7:30) differ from what their listed intervals add up to
# (9:00 and 7:00); the override keeps the recorded totals while the
# intervals stay as listed.

[group 1]
apartments = 150
schedule = 08:00 11:30
schedule = 12:30 18:00
away_hours_override = 9.5

[group 2]
apartments = 40
schedule = 06:00 13:00
away_hours_override = 7.5

[group 3]
apartments = 30
schedule = 11:00 16:00
schedule = 20:00 22:00

[group 4]
apartments = 60
schedule = 07:00 09:30
schedule = 13:00 15:40
schedule = 18:00 20:50

[group 5]
apartments = 20
schedule = 17:00 24:00
schedule = 00:00 05:00

[simulation]
seed = 1
horizon_s = 10000
arrival_model = poisson
service_model = exponential
feedback_fraction = 0
)";
}

}  // namespace fogduty::reference
