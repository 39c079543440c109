#include "pinatubo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "pinatubo/rng.hpp"

namespace pinatubo {

namespace {

std::vector<BitRow> enumerate_classes(int n, ClassEnumeration mode) {
  std::vector<BitRow> classes;
  if (mode == ClassEnumeration::Multiset) {
    // n+1 classes keyed by the number of 1-inputs, most 1s first.
    for (int ones = n; ones >= 0; --ones) {
      BitRow combo(static_cast<std::size_t>(n), 0);
      std::fill(combo.begin(), combo.begin() + ones, std::uint8_t{1});
      classes.push_back(std::move(combo));
    }
  } else {
    for (std::uint64_t c = (1ULL << n); c-- > 0;) {
      BitRow combo(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        combo[static_cast<std::size_t>(i)] = (c >> (n - 1 - i)) & 1;
      classes.push_back(std::move(combo));
    }
  }
  return classes;
}

/// Programs n fresh cells to the combination and returns the bit-line
/// current under the parallel model. Conductances are summed in sorted
/// order so permutations of a combination land on identical currents.
double sample_trial_current(const BitRow& combo, const DeviceParams& params,
                            RngStream& rng) {
  std::vector<double> conductances;
  conductances.reserve(combo.size());
  for (auto bit : combo) {
    const double r = sample_resistance(
        bit ? PhaseState::Crystalline : PhaseState::Amorphous, params, rng);
    conductances.push_back(1.0 / r);
  }
  std::sort(conductances.begin(), conductances.end());
  double total = 0.0;
  for (double g : conductances) total += g;
  return params.read_voltage_v * total;
}

double sample_std(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

std::vector<ClassStats> truth_table(LogicOp op, int n,
                                    const DeviceParams& params,
                                    std::optional<double> ref_override_ohms,
                                    std::uint64_t trials, std::uint64_t seed,
                                    ClassEnumeration mode) {
  params.validate();
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  if (n < 1 || n > 62) throw InvalidParams("input count out of range");

  SenseAmpConfig cfg = calibrate(op, n, params);
  if (ref_override_ohms) {
    if (!(*ref_override_ohms > 0.0))
      throw InvalidParams("reference resistance must be > 0 ohm");
    cfg.ref_primary_ohms = *ref_override_ohms;
  }

  const std::vector<BitRow> classes = enumerate_classes(n, mode);
  std::vector<ClassStats> table;
  table.reserve(classes.size());

  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const BitRow& combo = classes[ci];
    const bool expected = expected_output(op, combo);
    const std::uint64_t class_seed = derive_seed(seed, ci);

    ClassStats stats;
    stats.combination = combo;
    stats.trials = trials;
    stats.current_min_a = std::numeric_limits<double>::infinity();
    stats.current_max_a = 0.0;

    std::vector<double> log10_currents;
    log10_currents.reserve(trials);
    double sum = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      RngStream rng(derive_seed(class_seed, t));
      const double i = sample_trial_current(combo, params, rng);
      sum += i;
      stats.current_min_a = std::min(stats.current_min_a, i);
      stats.current_max_a = std::max(stats.current_max_a, i);
      log10_currents.push_back(std::log10(i));

      const bool out = sense(i, cfg, params.read_voltage_v);
      if (out)
        ++stats.out1;
      else
        ++stats.out0;
      if (out != expected) ++stats.errors;
    }
    stats.current_mean_a = sum / static_cast<double>(trials);
    stats.log10_std = sample_std(log10_currents);
    table.push_back(std::move(stats));
  }
  return table;
}

double RegionHistogram::class_gap_decades() const {
  int min_one_bin = std::numeric_limits<int>::max();
  int max_zero_bin = std::numeric_limits<int>::min();
  for (const Class& cls : classes) {
    for (const auto& [bin, count] : cls.bins) {
      if (count == 0) continue;
      if (cls.output_one)
        min_one_bin = std::min(min_one_bin, bin);
      else
        max_zero_bin = std::max(max_zero_bin, bin);
    }
  }
  if (min_one_bin == std::numeric_limits<int>::max() ||
      max_zero_bin == std::numeric_limits<int>::min())
    return std::numeric_limits<double>::infinity();
  return bin_low_log10a(min_one_bin) - bin_high_log10a(max_zero_bin);
}

RegionHistogram region_histogram(LogicOp op, int n, const DeviceParams& params,
                                 std::uint64_t trials, int bins_per_decade,
                                 std::uint64_t seed) {
  params.validate();
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  if (bins_per_decade < 1) throw InvalidParams("bins_per_decade must be >= 1");
  calibrate(op, n, params);  // arity + feasibility

  RegionHistogram hist;
  hist.bins_per_decade = bins_per_decade;

  const std::vector<BitRow> classes =
      enumerate_classes(n, ClassEnumeration::Multiset);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const BitRow& combo = classes[ci];
    const std::uint64_t class_seed = derive_seed(seed, ci);

    std::map<int, std::uint64_t> bins;
    for (std::uint64_t t = 0; t < trials; ++t) {
      RngStream rng(derive_seed(class_seed, t));
      const double i = sample_trial_current(combo, params, rng);
      const int bin = static_cast<int>(
          std::floor(std::log10(i) * bins_per_decade));
      ++bins[bin];
    }

    RegionHistogram::Class cls;
    cls.combination = combo;
    cls.output_one = expected_output(op, combo);
    cls.bins.assign(bins.begin(), bins.end());
    hist.classes.push_back(std::move(cls));
  }
  return hist;
}

std::vector<MarginRow> margin_sweep(LogicOp op, const DeviceParams& base,
                                    const std::vector<int>& n_values,
                                    const std::vector<double>& sigma_values,
                                    std::uint64_t trials, std::uint64_t seed) {
  if (n_values.empty() || sigma_values.empty())
    throw InvalidParams("margin sweep needs non-empty n and sigma lists");

  std::vector<MarginRow> rows;
  rows.reserve(n_values.size() * sigma_values.size());
  for (int n : n_values) {
    for (double sigma : sigma_values) {
      DeviceParams params = base;
      params.sigma_decades = sigma;

      MarginRow row;
      row.op = op;
      row.n = n;
      row.sigma_decades = sigma;
      try {
        row.margin_ratio = margin_ratio(op, n, params);
        const auto table = truth_table(op, n, params, std::nullopt, trials,
                                       derive_seed(seed, rows.size()));
        std::uint64_t errors = 0;
        std::uint64_t total = 0;
        for (const ClassStats& cls : table) {
          errors += cls.errors;
          total += cls.trials;
        }
        row.error_rate =
            static_cast<double>(errors) / static_cast<double>(total);
      } catch (const InfeasibleGate&) {
        row.feasible = false;
        row.margin_ratio = std::numeric_limits<double>::quiet_NaN();
        row.error_rate = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace pinatubo
