#include "pinatubo/sense_amp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pinatubo {

namespace {

void validate_arity(LogicOp op, int n) {
  if (n < 1)
    throw ArityMismatch(op.name() + " needs at least one input, got " +
                        std::to_string(n));
  switch (op.kind) {
    case LogicOp::Kind::Read:
    case LogicOp::Kind::Not:
      if (n != 1)
        throw ArityMismatch(op.name() + " is defined for exactly 1 input, got " +
                            std::to_string(n));
      break;
    case LogicOp::Kind::Xor:
      if (n != 2)
        throw ArityMismatch("xor is defined for exactly 2 inputs, got " +
                            std::to_string(n));
      break;
    case LogicOp::Kind::Threshold:
      if (op.k < 1 || op.k > n)
        throw ArityMismatch("threshold k=" + std::to_string(op.k) +
                            " must satisfy 1 <= k <= n=" + std::to_string(n));
      break;
    case LogicOp::Kind::Or:
    case LogicOp::Kind::And:
      break;
  }
}

/// k such that the gate outputs 1 iff at least k of n inputs are 1.
int one_count_threshold(LogicOp op, int n) {
  switch (op.kind) {
    case LogicOp::Kind::Read:
    case LogicOp::Kind::Not:
    case LogicOp::Kind::Or:
      return 1;
    case LogicOp::Kind::And:
      return n;
    case LogicOp::Kind::Threshold:
      return op.k;
    case LogicOp::Kind::Xor:
      break;
  }
  throw ArityMismatch("xor is a window comparator, not a k-of-n gate");
}

double geometric_mean(double a, double b) {
  return std::sqrt(a) * std::sqrt(b);
}

ClassBoundaries make_boundaries(double one_worst, double zero_worst) {
  if (!(one_worst < zero_worst))
    throw InfeasibleGate(
        "output classes overlap: worst '1' resistance " +
        std::to_string(one_worst) + " ohm >= worst '0' resistance " +
        std::to_string(zero_worst) + " ohm");
  return {one_worst, zero_worst};
}

}  // namespace

std::string LogicOp::name() const {
  switch (kind) {
    case Kind::Read: return "read";
    case Kind::Or: return "or";
    case Kind::And: return "and";
    case Kind::Xor: return "xor";
    case Kind::Not: return "not";
    case Kind::Threshold: return "threshold(" + std::to_string(k) + ")";
  }
  return "?";
}

double class_resistance(int n_low, int n_high, const DeviceParams& params) {
  if (n_low < 0 || n_high < 0 || n_low + n_high < 1)
    throw InvalidParams("class resistance needs at least one cell");
  const double conductance =
      n_low / params.r_low_ohms + n_high / params.r_high_ohms;
  return 1.0 / conductance;
}

ClassBoundaries class_boundaries(LogicOp op, int n,
                                 const DeviceParams& params) {
  params.validate();
  validate_arity(op, n);
  const int k = one_count_threshold(op, n);
  // Worst '1': exactly k low cells. Worst '0': k-1 low cells.
  return make_boundaries(class_resistance(k, n - k, params),
                         class_resistance(k - 1, n - k + 1, params));
}

CalibrationReport calibrate_report(LogicOp op, int n,
                                   const DeviceParams& params) {
  params.validate();
  validate_arity(op, n);

  CalibrationReport report;
  report.config.op = op;
  report.config.n_inputs = n;
  report.config.invert_output = op.kind == LogicOp::Kind::Not;

  if (op.kind == LogicOp::Kind::Xor) {
    const double r_two_low = class_resistance(2, 0, params);
    const double r_mixed = class_resistance(1, 1, params);
    const double r_two_high = class_resistance(0, 2, params);
    report.boundary_pairs.push_back(make_boundaries(r_two_low, r_mixed));
    report.boundary_pairs.push_back(make_boundaries(r_mixed, r_two_high));
    report.config.ref_primary_ohms = geometric_mean(r_two_low, r_mixed);
    report.config.ref_secondary_ohms = geometric_mean(r_mixed, r_two_high);
  } else {
    const ClassBoundaries b = class_boundaries(op, n, params);
    report.boundary_pairs.push_back(b);
    report.config.ref_primary_ohms =
        geometric_mean(b.r_one_worst_ohms, b.r_zero_worst_ohms);
  }

  report.margin_ratio = margin_ratio(op, n, params);
  report.low_margin_warning =
      report.margin_ratio < std::pow(10.0, 6.0 * params.sigma_decades);
  return report;
}

SenseAmpConfig calibrate(LogicOp op, int n, const DeviceParams& params) {
  return calibrate_report(op, n, params).config;
}

bool sense(double i_bitline_a, const SenseAmpConfig& cfg, double v_read_v) {
  if (!std::isfinite(v_read_v) || v_read_v <= 0.0)
    throw InvalidParams("read voltage must be > 0 V");
  if (!std::isfinite(i_bitline_a) || i_bitline_a < 0.0)
    throw InvalidParams("bit-line current must be >= 0 A");

  if (cfg.ref_secondary_ohms) {
    // Window comparator: '1' only strictly between the two reference
    // currents.
    const double i_upper = v_read_v / cfg.ref_primary_ohms;
    const double i_lower = v_read_v / *cfg.ref_secondary_ohms;
    return i_bitline_a > i_lower && i_bitline_a < i_upper;
  }
  const bool raw = i_bitline_a > v_read_v / cfg.ref_primary_ohms;
  return raw != cfg.invert_output;
}

double margin_ratio(LogicOp op, int n, const DeviceParams& params) {
  params.validate();
  validate_arity(op, n);
  if (op.kind == LogicOp::Kind::Xor) {
    const double r_two_low = class_resistance(2, 0, params);
    const double r_mixed = class_resistance(1, 1, params);
    const double r_two_high = class_resistance(0, 2, params);
    make_boundaries(r_two_low, r_mixed);
    make_boundaries(r_mixed, r_two_high);
    return std::min(r_mixed / r_two_low, r_two_high / r_mixed);
  }
  const ClassBoundaries b = class_boundaries(op, n, params);
  return b.r_zero_worst_ohms / b.r_one_worst_ohms;
}

bool expected_output(LogicOp op, std::span<const std::uint8_t> bits) {
  const int n = static_cast<int>(bits.size());
  validate_arity(op, n);
  const int ones =
      static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  switch (op.kind) {
    case LogicOp::Kind::Read: return ones == 1;
    case LogicOp::Kind::Not: return ones == 0;
    case LogicOp::Kind::Or: return ones >= 1;
    case LogicOp::Kind::And: return ones == n;
    case LogicOp::Kind::Xor: return ones == 1;
    case LogicOp::Kind::Threshold: return ones >= op.k;
  }
  return false;
}

}  // namespace pinatubo
