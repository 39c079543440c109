#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pinatubo/crossbar.hpp"
#include "pinatubo/sense_amp.hpp"

namespace pinatubo {

/// Monte Carlo statistics for one input combination.
struct ClassStats {
  BitRow combination;  // representative input bits
  std::uint64_t trials = 0;
  double current_min_a = 0.0;
  double current_mean_a = 0.0;
  double current_max_a = 0.0;
  double log10_std = 0.0;  // sample std dev of log10(current), 0 for trials < 2
  std::uint64_t out0 = 0;  // sense amp said '0'
  std::uint64_t out1 = 0;  // sense amp said '1'
  std::uint64_t errors = 0;
};

/// Multiset collapses permutation-equivalent combinations into n+1 classes
/// keyed by the number of 1-inputs (the parallel resistance only depends on
/// that). Exhaustive enumerates all 2^n combinations.
enum class ClassEnumeration { Multiset, Exhaustive };

/// Programs fresh cells per trial, senses the bit-line against the
/// calibrated reference (or ref_override_ohms in place of the primary
/// reference) and counts disagreements with the ideal boolean output.
/// Classes are listed most-1s first. Trials use seeds derived per
/// (class, trial), so results are independent of evaluation order.
std::vector<ClassStats> truth_table(
    LogicOp op, int n, const DeviceParams& params,
    std::optional<double> ref_override_ohms, std::uint64_t trials,
    std::uint64_t seed, ClassEnumeration mode = ClassEnumeration::Multiset);

/// Histogram of log10(bit-line current) per input class. Bin k spans
/// [k/bins_per_decade, (k+1)/bins_per_decade) in log10(amperes).
struct RegionHistogram {
  struct Class {
    BitRow combination;
    bool output_one = false;  // ideal output for this class
    // (bin index, count), ascending by bin
    std::vector<std::pair<int, std::uint64_t>> bins;
  };

  int bins_per_decade = 10;
  std::vector<Class> classes;

  double bin_low_log10a(int bin) const {
    return static_cast<double>(bin) / bins_per_decade;
  }
  double bin_high_log10a(int bin) const {
    return static_cast<double>(bin + 1) / bins_per_decade;
  }

  /// Decades of empty space between the output-'1' region and the
  /// output-'0' region, measured outward from the occupied bin edges:
  /// lowest '1'-class bin edge minus highest '0'-class bin edge.
  double class_gap_decades() const;
};

RegionHistogram region_histogram(LogicOp op, int n, const DeviceParams& params,
                                 std::uint64_t trials, int bins_per_decade,
                                 std::uint64_t seed);

/// One sweep point. An infeasible gate is recorded with NaN margin and
/// error rate instead of aborting the sweep.
struct MarginRow {
  LogicOp op;
  int n = 0;
  double sigma_decades = 0.0;
  double margin_ratio = 0.0;
  double error_rate = 0.0;
  bool feasible = true;
};

/// Calibrated-reference truth tables over the cross product of input counts
/// and sigma values. error_rate aggregates over all classes of a point.
std::vector<MarginRow> margin_sweep(LogicOp op, const DeviceParams& base,
                                    const std::vector<int>& n_values,
                                    const std::vector<double>& sigma_values,
                                    std::uint64_t trials, std::uint64_t seed);

}  // namespace pinatubo
