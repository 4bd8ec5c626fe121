#pragma once

// Wire formats for sensor reports and control traffic between devices, the
// Mist node, and the Fog host, plus the Mist address-translation table and
// the device-side control handling.
//
// Frame sizes are fixed:
//   sensor frame   10 bytes  (identifier, 16-bit source, 7-byte readings)
//   control msg     2 bytes  (kind, value)
//   control packet  5 bytes  (identifier, 16-bit destination, control msg)
//   radio frame    25 bytes  (15-byte radio header, 10-byte payload)
//
// Multi-byte integers are big-endian on the wire.

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fogduty/common.hpp"

namespace fogduty::protocol {

constexpr uint8_t kFrameIdentifier = 0x11;   // sensor/control packet marker
constexpr uint8_t kRadioDelimiter = 0x7E;    // radio frame start byte

constexpr size_t kSensorFrameBytes = 10;
constexpr size_t kControlMessageBytes = 2;
constexpr size_t kControlPacketBytes = 5;
constexpr size_t kRadioFrameBytes = 25;
constexpr size_t kRadioPayloadBytes = 10;
// Bytes of the radio frame that follow the length field.
constexpr uint16_t kRadioBodyLength = 22;

enum class DecodeError {
    none,
    short_buffer,
    bad_identifier,
    bad_length,
    bad_value,
};

inline const char* to_string(DecodeError e) {
    switch (e) {
        case DecodeError::none: return "ok";
        case DecodeError::short_buffer: return "short buffer";
        case DecodeError::bad_identifier: return "bad identifier";
        case DecodeError::bad_length: return "bad length";
        case DecodeError::bad_value: return "value out of range";
    }
    return "?";
}

template <class T>
struct Decoded {
    T value{};
    DecodeError error = DecodeError::none;

    explicit operator bool() const { return error == DecodeError::none; }
};

// The 7 payload bytes of a sensor report.
struct SensorReadings {
    uint8_t temperature_c = 0;
    uint8_t humidity_pct = 0;
    uint16_t gas_level = 0;
    uint8_t flame = 0;
    uint8_t state = 0;
    uint8_t battery_pct = 0;

    bool operator==(const SensorReadings&) const = default;
};

struct SensorFrame {
    uint16_t source_addr = 0;
    SensorReadings readings;

    bool operator==(const SensorFrame&) const = default;
};

enum class ControlKind : uint8_t {
    alarm = 'a',       // value 'L' on, 'D' off
    sleep_time = 'b',  // value 0..3 seconds of regular sleep
    long_sleep = 'c',  // value = Long Sleep seconds, enters away mode
    mode = 'd',        // value = DeviceMode code
};

constexpr uint8_t kAlarmOn = 'L';
constexpr uint8_t kAlarmOff = 'D';
constexpr uint8_t kMaxRegularSleepS = 3;

struct ControlMessage {
    ControlKind kind = ControlKind::alarm;
    uint8_t value = kAlarmOff;

    bool operator==(const ControlMessage&) const = default;
};

enum class DeviceMode : uint8_t { regular = 0, emergency = 1, away = 2 };

inline DecodeError check(const ControlMessage& m) {
    switch (m.kind) {
        case ControlKind::alarm:
            return (m.value == kAlarmOn || m.value == kAlarmOff) ? DecodeError::none
                                                                 : DecodeError::bad_value;
        case ControlKind::sleep_time:
            return m.value <= kMaxRegularSleepS ? DecodeError::none : DecodeError::bad_value;
        case ControlKind::long_sleep:
            return DecodeError::none;  // any byte of seconds
        case ControlKind::mode:
            return m.value <= static_cast<uint8_t>(DeviceMode::away) ? DecodeError::none
                                                                     : DecodeError::bad_value;
    }
    return DecodeError::bad_value;
}

struct ControlPacket {
    uint16_t dest_addr = 0;
    ControlMessage control;

    bool operator==(const ControlPacket&) const = default;
};

// Over-the-air frame: emulated fixed radio header plus a 10-byte payload.
// The Mist node strips the header and forwards the payload; rebuilding the
// frame for the return path restores the header around it.
struct RadioFrame {
    uint8_t frame_type = 0x90;
    uint64_t source_addr64 = 0;
    uint16_t source_addr16 = 0;
    uint8_t options = 0;
    std::array<uint8_t, kRadioPayloadBytes> payload{};

    bool operator==(const RadioFrame&) const = default;
};

namespace detail {

inline void put16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v & 0xFF));
}

inline void put64(std::vector<uint8_t>& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<uint8_t>((v >> shift) & 0xFF));
}

inline uint16_t get16(std::span<const uint8_t> b, size_t at) {
    return static_cast<uint16_t>((b[at] << 8) | b[at + 1]);
}

inline uint64_t get64(std::span<const uint8_t> b, size_t at) {
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) v = (v << 8) | b[at + i];
    return v;
}

}  // namespace detail

// --- encoders -------------------------------------------------------------

inline std::vector<uint8_t> encode(const SensorFrame& f) {
    std::vector<uint8_t> out;
    out.reserve(kSensorFrameBytes);
    out.push_back(kFrameIdentifier);
    detail::put16(out, f.source_addr);
    out.push_back(f.readings.temperature_c);
    out.push_back(f.readings.humidity_pct);
    detail::put16(out, f.readings.gas_level);
    out.push_back(f.readings.flame);
    out.push_back(f.readings.state);
    out.push_back(f.readings.battery_pct);
    if (out.size() != kSensorFrameBytes) throw ValidationError("sensor frame size drifted");
    return out;
}

inline std::vector<uint8_t> encode(const ControlMessage& m) {
    if (check(m) != DecodeError::none)
        throw ValidationError(std::string("control message invalid: ") + to_string(check(m)));
    std::vector<uint8_t> out{static_cast<uint8_t>(m.kind), m.value};
    if (out.size() != kControlMessageBytes) throw ValidationError("control message size drifted");
    return out;
}

inline std::vector<uint8_t> encode(const ControlPacket& p) {
    std::vector<uint8_t> out;
    out.reserve(kControlPacketBytes);
    out.push_back(kFrameIdentifier);
    detail::put16(out, p.dest_addr);
    const auto msg = encode(p.control);
    out.insert(out.end(), msg.begin(), msg.end());
    if (out.size() != kControlPacketBytes) throw ValidationError("control packet size drifted");
    return out;
}

inline std::vector<uint8_t> encode(const RadioFrame& f) {
    std::vector<uint8_t> out;
    out.reserve(kRadioFrameBytes);
    out.push_back(kRadioDelimiter);
    detail::put16(out, kRadioBodyLength);
    out.push_back(f.frame_type);
    detail::put64(out, f.source_addr64);
    detail::put16(out, f.source_addr16);
    out.push_back(f.options);
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    if (out.size() != kRadioFrameBytes) throw ValidationError("radio frame size drifted");
    return out;
}

// --- decoders -------------------------------------------------------------

inline Decoded<SensorFrame> decode_sensor_frame(std::span<const uint8_t> bytes) {
    Decoded<SensorFrame> r;
    if (bytes.size() < kSensorFrameBytes) { r.error = DecodeError::short_buffer; return r; }
    if (bytes.size() != kSensorFrameBytes) { r.error = DecodeError::bad_length; return r; }
    if (bytes[0] != kFrameIdentifier) { r.error = DecodeError::bad_identifier; return r; }
    r.value.source_addr = detail::get16(bytes, 1);
    r.value.readings.temperature_c = bytes[3];
    r.value.readings.humidity_pct = bytes[4];
    r.value.readings.gas_level = detail::get16(bytes, 5);
    r.value.readings.flame = bytes[7];
    r.value.readings.state = bytes[8];
    r.value.readings.battery_pct = bytes[9];
    return r;
}

inline Decoded<ControlMessage> decode_control_message(std::span<const uint8_t> bytes) {
    Decoded<ControlMessage> r;
    if (bytes.size() < kControlMessageBytes) { r.error = DecodeError::short_buffer; return r; }
    if (bytes.size() != kControlMessageBytes) { r.error = DecodeError::bad_length; return r; }
    const uint8_t kind = bytes[0];
    if (kind != 'a' && kind != 'b' && kind != 'c' && kind != 'd') {
        r.error = DecodeError::bad_identifier;
        return r;
    }
    r.value.kind = static_cast<ControlKind>(kind);
    r.value.value = bytes[1];
    r.error = check(r.value);
    return r;
}

inline Decoded<ControlPacket> decode_control_packet(std::span<const uint8_t> bytes) {
    Decoded<ControlPacket> r;
    if (bytes.size() < kControlPacketBytes) { r.error = DecodeError::short_buffer; return r; }
    if (bytes.size() != kControlPacketBytes) { r.error = DecodeError::bad_length; return r; }
    if (bytes[0] != kFrameIdentifier) { r.error = DecodeError::bad_identifier; return r; }
    r.value.dest_addr = detail::get16(bytes, 1);
    const auto msg = decode_control_message(bytes.subspan(3, 2));
    r.value.control = msg.value;
    r.error = msg.error;
    return r;
}

inline Decoded<RadioFrame> decode_radio_frame(std::span<const uint8_t> bytes) {
    Decoded<RadioFrame> r;
    if (bytes.size() < kRadioFrameBytes) { r.error = DecodeError::short_buffer; return r; }
    if (bytes.size() != kRadioFrameBytes) { r.error = DecodeError::bad_length; return r; }
    if (bytes[0] != kRadioDelimiter) { r.error = DecodeError::bad_identifier; return r; }
    if (detail::get16(bytes, 1) != kRadioBodyLength) { r.error = DecodeError::bad_length; return r; }
    r.value.frame_type = bytes[3];
    r.value.source_addr64 = detail::get64(bytes, 4);
    r.value.source_addr16 = detail::get16(bytes, 12);
    r.value.options = bytes[14];
    std::copy(bytes.begin() + 15, bytes.begin() + 25, r.value.payload.begin());
    return r;
}

// Hex dump for golden files and logs: "11 01 02 62 03".
inline std::string hex_dump(std::span<const uint8_t> bytes) {
    std::string out;
    out.reserve(bytes.size() * 3);
    char buf[4];
    for (size_t i = 0; i < bytes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%02X", bytes[i]);
        if (i) out.push_back(' ');
        out += buf;
    }
    return out;
}

// --- Mist address translation ----------------------------------------------
//
// Bijective map between the 16-bit short addresses used on the serial side
// and the 64-bit radio addresses. Single writer; concurrent readers need a
// snapshot or external locking (documented contract, not enforced).
class AddressTable {
public:
    // False if either address is already mapped.
    bool insert(uint16_t short_addr, uint64_t radio_addr) {
        if (short_to_radio_.count(short_addr) || radio_to_short_.count(radio_addr)) return false;
        short_to_radio_.emplace(short_addr, radio_addr);
        radio_to_short_.emplace(radio_addr, short_addr);
        return true;
    }

    bool erase(uint16_t short_addr) {
        auto it = short_to_radio_.find(short_addr);
        if (it == short_to_radio_.end()) return false;
        radio_to_short_.erase(it->second);
        short_to_radio_.erase(it);
        return true;
    }

    std::optional<uint64_t> to_radio(uint16_t short_addr) const {
        auto it = short_to_radio_.find(short_addr);
        if (it == short_to_radio_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<uint16_t> to_short(uint64_t radio_addr) const {
        auto it = radio_to_short_.find(radio_addr);
        if (it == radio_to_short_.end()) return std::nullopt;
        return it->second;
    }

    size_t size() const { return short_to_radio_.size(); }

private:
    std::unordered_map<uint16_t, uint64_t> short_to_radio_;
    std::unordered_map<uint64_t, uint16_t> radio_to_short_;
};

// --- device-side control application ----------------------------------------

// Canonical duty parameters entered on a mode switch.
constexpr double kRegularActiveS = 2.0;
constexpr double kRegularDefaultSleepS = 3.0;
constexpr double kEmergencyActiveS = 1.0;
constexpr double kDefaultLongSleepS = 4.0;

struct DeviceState {
    DeviceMode mode = DeviceMode::regular;
    double sleep_s = kRegularDefaultSleepS;
    bool alarm_on = false;
    bool sensors_on = true;

    bool operator==(const DeviceState&) const = default;
};

// Apply one control message; nullopt means the message was rejected and the
// state is unchanged. Regular mode never ends up with more than 3 s of
// sleep; emergency keeps its fixed 1 s cycle.
inline std::optional<DeviceState> apply_control(DeviceState state, const ControlMessage& msg) {
    if (check(msg) != DecodeError::none) return std::nullopt;
    switch (msg.kind) {
        case ControlKind::alarm:
            state.alarm_on = (msg.value == kAlarmOn);
            return state;
        case ControlKind::sleep_time:
            if (state.mode == DeviceMode::emergency) return std::nullopt;
            if (state.mode == DeviceMode::regular && msg.value > kMaxRegularSleepS)
                return std::nullopt;
            state.sleep_s = msg.value;
            return state;
        case ControlKind::long_sleep:
            state.mode = DeviceMode::away;
            state.sleep_s = msg.value;
            return state;
        case ControlKind::mode:
            switch (static_cast<DeviceMode>(msg.value)) {
                case DeviceMode::regular:
                    state.mode = DeviceMode::regular;
                    state.sleep_s = kRegularDefaultSleepS;
                    state.sensors_on = true;
                    return state;
                case DeviceMode::emergency:
                    state.mode = DeviceMode::emergency;
                    state.sleep_s = 0.0;
                    state.sensors_on = true;
                    return state;
                case DeviceMode::away:
                    state.mode = DeviceMode::away;
                    state.sleep_s = kDefaultLongSleepS;
                    return state;
            }
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace fogduty::protocol
