#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pinatubo/device.hpp"

namespace pinatubo {

/// One row's worth of bits, index 0 = leftmost column. Values are 0 or 1.
using BitRow = std::vector<std::uint8_t>;

/// "1010" -> {1,0,1,0}. Throws InvalidParams on anything but 0/1 characters
/// or an empty string.
BitRow bits_from_string(std::string_view text);
std::string bits_to_string(const BitRow& bits);

/// rows x cols array of PCM cells sharing per-column bit-lines. Activating a
/// set of rows puts the activated cells of each column in parallel between
/// the read voltage and that column's bit-line.
///
/// Mutations (program_row) are single-writer and consume the crossbar's own
/// RNG stream column-sequentially, so a fixed (dims, params, seed, command
/// sequence) reproduces the array bit-for-bit. Bit-line queries are const and
/// touch no cell state.
class Crossbar {
 public:
  /// All cells start amorphous with resistances sampled from the high
  /// distribution. Throws InvalidDimensions for zero rows/cols and
  /// InvalidParams for bad params or pulses that do not classify as
  /// set/reset respectively.
  Crossbar(std::size_t rows, std::size_t cols, const DeviceParams& params,
           std::uint64_t seed, const PulseSpec& set_pulse = kDefaultSetPulse,
           const PulseSpec& reset_pulse = kDefaultResetPulse);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const DeviceParams& params() const { return params_; }

  /// Throws IndexOutOfRange.
  const Cell& cell(std::size_t row, std::size_t col) const;

  /// Programs every cell of the row: bit 1 applies the set pulse, bit 0 the
  /// reset pulse. Cells are programmed in column order. Throws
  /// IndexOutOfRange for a bad row and InvalidDimensions for a bit pattern
  /// whose length differs from cols.
  void program_row(std::size_t row, const BitRow& bits);

  /// Parallel resistance of the activated cells in one column:
  /// 1 / sum(1/R_i). Duplicate indices are rejected (a row is either
  /// activated or not). Throws EmptyActivation, IndexOutOfRange,
  /// ArityMismatch (duplicates).
  double bitline_resistance(std::span<const std::size_t> active_rows,
                            std::size_t col) const;

  /// v_read / bitline_resistance. Throws InvalidParams for v_read <= 0.
  double bitline_current(std::span<const std::size_t> active_rows,
                         std::size_t col, double v_read_v) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  DeviceParams params_;
  PulseSpec set_pulse_;
  PulseSpec reset_pulse_;
  std::vector<Cell> cells_;  // row-major
  RngStream rng_;

  void check_activation(std::span<const std::size_t> active_rows,
                        std::size_t col) const;
};

}  // namespace pinatubo
