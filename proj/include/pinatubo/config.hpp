#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinatubo/device.hpp"

namespace pinatubo {

/// Simulator configuration. Every JSON field is optional and defaults to the
/// values below; unknown fields are rejected.
///
/// Schema (flat keys plus two pulse objects):
///   {"rows":16, "cols":64,
///    "r_low_ohms":1e3, "r_high_ohms":1e8, "sigma_decades":0.1,
///    "read_voltage_v":0.4,
///    "read_v_max_v":0.5, "set_v_min_v":2.0, "set_v_max_v":3.5,
///    "set_min_total_ns":100, "reset_v_min_v":3.5, "reset_max_width_ns":50,
///    "set_pulse":{"amplitude_v":2.7,"rise_ns":10,"width_ns":30,"fall_ns":3000},
///    "reset_pulse":{"amplitude_v":4.0,"rise_ns":10,"width_ns":10,"fall_ns":10},
///    "seed":42}
struct Config {
  std::size_t rows = 16;
  std::size_t cols = 64;
  DeviceParams device;
  PulseSpec set_pulse = kDefaultSetPulse;
  PulseSpec reset_pulse = kDefaultResetPulse;

  /// Device invariants plus: configured pulses must classify as set/reset.
  /// Throws ConfigError.
  void validate() const;

  /// Parses and validates. Throws ConfigError with the file/line/field in
  /// the message.
  static Config load_file(const std::string& path);
  static Config load_json(const std::string& json_text,
                          const std::string& origin = "<string>");

  /// Effective configuration, every field explicit. Reloading the dump
  /// reproduces this config exactly.
  std::string dump_json() const;
};

/// "v" -> {v};  "start:stop:step" -> inclusive range (endpoints within half a
/// step). Throws ConfigError.
std::vector<double> parse_sweep(const std::string& text);

/// parse_sweep restricted to non-negative whole numbers.
std::vector<int> parse_int_sweep(const std::string& text);

}  // namespace pinatubo
