#include "pinatubo/device.hpp"

#include <cmath>
#include <sstream>

namespace pinatubo {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

[[noreturn]] void fail_params(const std::string& what) {
  throw InvalidParams(what);
}

}  // namespace

void PulseSpec::validate() const {
  if (!std::isfinite(amplitude_v) || amplitude_v <= 0.0)
    fail_params("pulse amplitude must be > 0 V");
  if (!finite_nonneg(rise_ns) || !finite_nonneg(width_ns) ||
      !finite_nonneg(fall_ns))
    fail_params("pulse rise/width/fall times must be >= 0 ns");
}

void DeviceParams::validate() const {
  if (!std::isfinite(r_low_ohms) || !std::isfinite(r_high_ohms) ||
      r_low_ohms <= 0.0 || r_low_ohms >= r_high_ohms)
    fail_params("resistance medians must satisfy 0 < r_low_ohms < r_high_ohms");
  if (!finite_nonneg(sigma_decades))
    fail_params("sigma_decades must be >= 0");
  if (!std::isfinite(read_voltage_v) || read_voltage_v <= 0.0)
    fail_params("read_voltage_v must be > 0");
  if (!std::isfinite(read_v_max_v) || !std::isfinite(set_v_min_v) ||
      !std::isfinite(set_v_max_v) || !std::isfinite(reset_v_min_v) ||
      !(read_v_max_v < set_v_min_v && set_v_min_v < set_v_max_v &&
        set_v_max_v <= reset_v_min_v))
    fail_params(
        "classification thresholds must satisfy "
        "read_v_max_v < set_v_min_v < set_v_max_v <= reset_v_min_v");
  if (!finite_nonneg(set_min_total_ns) || !finite_nonneg(reset_max_width_ns))
    fail_params("set_min_total_ns and reset_max_width_ns must be >= 0");
}

PulseClass classify_pulse(const PulseSpec& pulse, const DeviceParams& params) {
  pulse.validate();
  params.validate();

  if (pulse.amplitude_v <= params.read_v_max_v) return PulseClass::Read;
  if (pulse.amplitude_v >= params.set_v_min_v &&
      pulse.amplitude_v < params.set_v_max_v &&
      pulse.width_ns + pulse.fall_ns >= params.set_min_total_ns)
    return PulseClass::Set;
  if (pulse.amplitude_v >= params.reset_v_min_v &&
      pulse.width_ns <= params.reset_max_width_ns)
    return PulseClass::Reset;

  std::ostringstream msg;
  msg << "pulse (" << pulse.amplitude_v << " V, rise " << pulse.rise_ns
      << " ns, width " << pulse.width_ns << " ns, fall " << pulse.fall_ns
      << " ns) matches no read/set/reset regime";
  throw AmbiguousPulse(msg.str());
}

double sample_resistance(PhaseState phase, const DeviceParams& params,
                         RngStream& rng) {
  params.validate();
  const double median =
      phase == PhaseState::Crystalline ? params.r_low_ohms : params.r_high_ohms;
  if (params.sigma_decades == 0.0) return median;
  // Fresh distribution per draw: the sample is a pure function of the
  // engine state, independent of any cached spare variate.
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  const double exponent =
      std::log10(median) + params.sigma_decades * unit_normal(rng);
  return std::pow(10.0, exponent);
}

Cell apply_pulse(const Cell& cell, const PulseSpec& pulse,
                 const DeviceParams& params, RngStream& rng) {
  Cell out = cell;
  switch (classify_pulse(pulse, params)) {
    case PulseClass::Read:
      ++out.read_count;
      break;
    case PulseClass::Set:
      out.phase = PhaseState::Crystalline;
      out.resistance_ohms =
          sample_resistance(PhaseState::Crystalline, params, rng);
      ++out.set_count;
      break;
    case PulseClass::Reset:
      out.phase = PhaseState::Amorphous;
      out.resistance_ohms =
          sample_resistance(PhaseState::Amorphous, params, rng);
      ++out.reset_count;
      break;
  }
  return out;
}

double cell_current(const Cell& cell, double v_read_v) {
  if (!std::isfinite(v_read_v) || v_read_v <= 0.0)
    fail_params("read voltage must be > 0 V");
  if (!std::isfinite(cell.resistance_ohms) || cell.resistance_ohms <= 0.0)
    fail_params("cell resistance must be > 0 ohm");
  return v_read_v / cell.resistance_ohms;
}

}  // namespace pinatubo
