#include "pinatubo/crossbar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pinatubo {

BitRow bits_from_string(std::string_view text) {
  if (text.empty()) throw InvalidParams("empty bit string");
  BitRow bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw InvalidParams("bit string must contain only 0/1, got '" +
                          std::string(1, c) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

std::string bits_to_string(const BitRow& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Crossbar::Crossbar(std::size_t rows, std::size_t cols,
                   const DeviceParams& params, std::uint64_t seed,
                   const PulseSpec& set_pulse, const PulseSpec& reset_pulse)
    : rows_(rows),
      cols_(cols),
      params_(params),
      set_pulse_(set_pulse),
      reset_pulse_(reset_pulse),
      rng_(seed) {
  if (rows_ < 1 || cols_ < 1)
    throw InvalidDimensions("crossbar needs at least 1 row and 1 column, got " +
                            std::to_string(rows_) + "x" +
                            std::to_string(cols_));
  params_.validate();
  try {
    if (classify_pulse(set_pulse_, params_) != PulseClass::Set)
      throw InvalidParams("configured set pulse does not classify as a set");
    if (classify_pulse(reset_pulse_, params_) != PulseClass::Reset)
      throw InvalidParams("configured reset pulse does not classify as a reset");
  } catch (const AmbiguousPulse& e) {
    throw InvalidParams(e.what());
  }

  cells_.reserve(rows_ * cols_);
  for (std::size_t i = 0; i < rows_ * cols_; ++i) {
    Cell cell;
    cell.phase = PhaseState::Amorphous;
    cell.resistance_ohms =
        sample_resistance(PhaseState::Amorphous, params_, rng_);
    cells_.push_back(cell);
  }
}

const Cell& Crossbar::cell(std::size_t row, std::size_t col) const {
  if (row >= rows_)
    throw IndexOutOfRange("row " + std::to_string(row) + " >= rows " +
                          std::to_string(rows_));
  if (col >= cols_)
    throw IndexOutOfRange("column " + std::to_string(col) + " >= cols " +
                          std::to_string(cols_));
  return cells_[row * cols_ + col];
}

void Crossbar::program_row(std::size_t row, const BitRow& bits) {
  if (row >= rows_)
    throw IndexOutOfRange("row " + std::to_string(row) + " >= rows " +
                          std::to_string(rows_));
  if (bits.size() != cols_)
    throw InvalidDimensions("bit pattern length " +
                            std::to_string(bits.size()) + " != cols " +
                            std::to_string(cols_));
  for (std::size_t c = 0; c < cols_; ++c) {
    Cell& cell = cells_[row * cols_ + c];
    cell = apply_pulse(cell, bits[c] ? set_pulse_ : reset_pulse_, params_,
                       rng_);
  }
}

void Crossbar::check_activation(std::span<const std::size_t> active_rows,
                                std::size_t col) const {
  if (active_rows.empty())
    throw EmptyActivation("bit-line query needs at least one activated row");
  if (col >= cols_)
    throw IndexOutOfRange("column " + std::to_string(col) + " >= cols " +
                          std::to_string(cols_));
  for (std::size_t r : active_rows)
    if (r >= rows_)
      throw IndexOutOfRange("activated row " + std::to_string(r) +
                            " >= rows " + std::to_string(rows_));
  std::vector<std::size_t> sorted(active_rows.begin(), active_rows.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ArityMismatch("duplicate activated row; a row is either on or off");
}

double Crossbar::bitline_resistance(std::span<const std::size_t> active_rows,
                                    std::size_t col) const {
  check_activation(active_rows, col);
  // Summing in sorted order makes the result a function of the multiset of
  // resistances, independent of activation order.
  std::vector<double> conductances;
  conductances.reserve(active_rows.size());
  for (std::size_t r : active_rows)
    conductances.push_back(1.0 / cells_[r * cols_ + col].resistance_ohms);
  std::sort(conductances.begin(), conductances.end());
  double total = 0.0;
  for (double g : conductances) total += g;
  return 1.0 / total;
}

double Crossbar::bitline_current(std::span<const std::size_t> active_rows,
                                 std::size_t col, double v_read_v) const {
  if (!std::isfinite(v_read_v) || v_read_v <= 0.0)
    throw InvalidParams("read voltage must be > 0 V");
  return v_read_v / bitline_resistance(active_rows, col);
}

}  // namespace pinatubo
