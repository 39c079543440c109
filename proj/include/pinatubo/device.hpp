#pragma once

#include <cstdint>

#include "pinatubo/errors.hpp"
#include "pinatubo/rng.hpp"

namespace pinatubo {

/// Amorphous = high-resistance class, crystalline = low-resistance class.
enum class PhaseState { Amorphous, Crystalline };

enum class PulseClass { Read, Set, Reset };

/// A voltage pulse applied to one cell's top electrode.
struct PulseSpec {
  double amplitude_v = 0.0;
  double rise_ns = 0.0;
  double width_ns = 0.0;
  double fall_ns = 0.0;

  /// Throws InvalidParams unless amplitude > 0 and all times >= 0.
  void validate() const;
};

/// Long medium-amplitude pulse: crystallizes (low resistance).
inline constexpr PulseSpec kDefaultSetPulse{2.7, 10.0, 30.0, 3000.0};
/// Short high-amplitude pulse: amorphizes (high resistance).
inline constexpr PulseSpec kDefaultResetPulse{4.0, 10.0, 10.0, 10.0};

/// Population parameters for a batch of cells plus the pulse-classification
/// thresholds. Resistance medians are per-cell values; a programmed cell's
/// resistance is drawn log-normally around the median of its phase class.
struct DeviceParams {
  double r_low_ohms = 1e3;          // crystalline median
  double r_high_ohms = 1e8;         // amorphous median
  double sigma_decades = 0.1;       // std dev of log10(R) per program pulse
  double read_voltage_v = 0.4;      // bias used for all current sensing
  double read_v_max_v = 0.5;        // amplitude <= this classifies as read
  double set_v_min_v = 2.0;         // set band lower edge (inclusive)
  double set_v_max_v = 3.5;         // set band upper edge (exclusive)
  double set_min_total_ns = 100.0;  // minimum width+fall for crystallization
  double reset_v_min_v = 3.5;       // amplitude >= this classifies as reset
  double reset_max_width_ns = 50.0; // reset must be faster than this
  std::uint64_t seed = 42;

  /// Throws InvalidParams unless 0 < r_low < r_high, sigma >= 0,
  /// read_voltage > 0 and read_v_max < set_v_min < set_v_max <= reset_v_min.
  void validate() const;
};

struct Cell {
  PhaseState phase = PhaseState::Amorphous;
  double resistance_ohms = 0.0;
  std::uint64_t set_count = 0;
  std::uint64_t reset_count = 0;
  std::uint64_t read_count = 0;
};

/// Classifies a pulse into exactly one of read/set/reset. The regimes are
/// disjoint by the DeviceParams ordering invariant; a pulse in none of them
/// (e.g. high amplitude but slow, or set-band amplitude but too short) throws
/// AmbiguousPulse.
PulseClass classify_pulse(const PulseSpec& pulse, const DeviceParams& params);

/// One programming sample: 10^x with x ~ Normal(log10(class median),
/// sigma_decades). With sigma_decades == 0 returns the median exactly and
/// consumes no randomness.
double sample_resistance(PhaseState phase, const DeviceParams& params,
                         RngStream& rng);

/// Applies a classified pulse. Read leaves phase and resistance untouched;
/// set/reset move to the pulse's target phase regardless of the prior phase
/// and resample the resistance. Counters advance by one.
Cell apply_pulse(const Cell& cell, const PulseSpec& pulse,
                 const DeviceParams& params, RngStream& rng);

/// Ohmic read: v_read / R.
double cell_current(const Cell& cell, double v_read_v);

}  // namespace pinatubo
