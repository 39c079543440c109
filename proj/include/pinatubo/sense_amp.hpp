#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinatubo/device.hpp"

namespace pinatubo {

/// Logic function computed by the sense amplifier for a given reference
/// placement. Or/And/Threshold work for any input count; Xor requires two
/// inputs, Not and Read exactly one.
struct LogicOp {
  enum class Kind { Read, Or, And, Xor, Not, Threshold };

  Kind kind = Kind::Read;
  int k = 0;  // Threshold only: output 1 iff at least k inputs are 1

  static LogicOp read() { return {Kind::Read, 0}; }
  static LogicOp bit_or() { return {Kind::Or, 0}; }
  static LogicOp bit_and() { return {Kind::And, 0}; }
  static LogicOp bit_xor() { return {Kind::Xor, 0}; }
  static LogicOp bit_not() { return {Kind::Not, 0}; }
  static LogicOp threshold(int k) { return {Kind::Threshold, k}; }

  /// "read", "or", ..., "threshold(3)".
  std::string name() const;

  friend bool operator==(const LogicOp&, const LogicOp&) = default;
};

/// Worst-case members of the two output classes, as bit-line resistances.
/// r_one_worst is the highest-resistance (lowest-current) input combination
/// that must still read as '1'; r_zero_worst the lowest-resistance
/// combination that must read as '0'.
struct ClassBoundaries {
  double r_one_worst_ohms = 0.0;
  double r_zero_worst_ohms = 0.0;
};

/// A calibrated sense amplifier. Single-reference ops compare the bit-line
/// current against v_read / ref_primary. Xor uses a window: ref_primary is
/// the low-resistance-side reference, ref_secondary the high-resistance-side
/// one, and the output is 1 only strictly inside the current band between
/// them. invert_output flips the comparator output (Not).
struct SenseAmpConfig {
  LogicOp op;
  int n_inputs = 1;
  double ref_primary_ohms = 0.0;
  std::optional<double> ref_secondary_ohms;
  bool invert_output = false;
};

/// Calibration plus the diagnostics behind it. boundary_pairs has one entry
/// for single-reference ops and two (low side, high side) for Xor.
/// low_margin_warning is set when margin_ratio < 10^(6 * sigma_decades),
/// i.e. the class gap is under roughly +-3 sigma per side in log space.
struct CalibrationReport {
  SenseAmpConfig config;
  std::vector<ClassBoundaries> boundary_pairs;
  double margin_ratio = 0.0;
  bool low_margin_warning = false;
};

/// Bit-line resistance of n_low crystalline cells in parallel with n_high
/// amorphous cells, at the class medians: 1/(n_low/R_L + n_high/R_H).
double class_resistance(int n_low, int n_high, const DeviceParams& params);

/// Boundary pair for a single-reference op (Read, Not, Or, And, Threshold).
/// Throws ArityMismatch for Xor (it has two pairs; use calibrate_report) and
/// InfeasibleGate when the classes collide.
ClassBoundaries class_boundaries(LogicOp op, int n, const DeviceParams& params);

/// Places each reference at the geometric mean of its boundary pair, giving
/// equal multiplicative margin toward both classes.
SenseAmpConfig calibrate(LogicOp op, int n, const DeviceParams& params);
CalibrationReport calibrate_report(LogicOp op, int n,
                                   const DeviceParams& params);

/// Comparator decision for a bit-line current. Strict comparisons: a current
/// exactly equal to a reference current reads as the lower-conductance side
/// ('0' before inversion).
bool sense(double i_bitline_a, const SenseAmpConfig& cfg, double v_read_v);

/// Worst-case '0'-class to '1'-class resistance ratio: the multiplicative
/// room available for the reference. For Xor, the tighter of its two sides.
double margin_ratio(LogicOp op, int n, const DeviceParams& params);

/// Ideal boolean value of the op on the given input bits.
bool expected_output(LogicOp op, std::span<const std::uint8_t> bits);

}  // namespace pinatubo
