#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "pinatubo/crossbar.hpp"

using namespace pinatubo;

namespace {

DeviceParams exact_params() {
  DeviceParams p;
  p.sigma_decades = 0.0;
  return p;
}

// independent route for expected bit-line values
double parallel_r(const std::vector<double>& resistances) {
  double g = 0.0;
  for (double r : resistances) g += 1.0 / r;
  return 1.0 / g;
}

}  // namespace

TEST_SUITE("crossbar") {

TEST_CASE("construction initializes an all-amorphous array") {
  Crossbar cb(1, 1, exact_params(), 9);
  CHECK(cb.rows() == 1);
  CHECK(cb.cols() == 1);
  CHECK(cb.cell(0, 0).phase == PhaseState::Amorphous);

  Crossbar big(16, 64, exact_params(), 9);
  for (std::size_t r = 0; r < big.rows(); ++r)
    for (std::size_t c = 0; c < big.cols(); ++c)
      CHECK(big.cell(r, c).resistance_ohms == 1e8);
}

TEST_CASE("construction is deterministic in the seed") {
  const DeviceParams p;  // sigma 0.1
  Crossbar a(4, 8, p, 1234), b(4, 8, p, 1234), c(4, 8, p, 99);
  bool all_equal = true, any_differs = false;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t col = 0; col < 8; ++col) {
      all_equal &= a.cell(r, col).resistance_ohms ==
                   b.cell(r, col).resistance_ohms;
      any_differs |= a.cell(r, col).resistance_ohms !=
                     c.cell(r, col).resistance_ohms;
    }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("invalid dimensions and bad pulses are rejected") {
  CHECK_THROWS_AS(Crossbar(0, 4, exact_params(), 1), InvalidDimensions);
  CHECK_THROWS_AS(Crossbar(4, 0, exact_params(), 1), InvalidDimensions);
  // a set pulse that cannot crystallize is a config bug, not a set
  CHECK_THROWS_AS(
      Crossbar(2, 2, exact_params(), 1, PulseSpec{2.7, 10, 10, 10}),
      InvalidParams);
}

TEST_CASE("program_row writes phases per bit") {
  Crossbar cb(2, 4, exact_params(), 7);
  cb.program_row(0, bits_from_string("1010"));
  CHECK(cb.cell(0, 0).phase == PhaseState::Crystalline);
  CHECK(cb.cell(0, 1).phase == PhaseState::Amorphous);
  CHECK(cb.cell(0, 2).phase == PhaseState::Crystalline);
  CHECK(cb.cell(0, 3).phase == PhaseState::Amorphous);
  // row 1 untouched
  for (std::size_t c = 0; c < 4; ++c)
    CHECK(cb.cell(1, c).set_count == 0);

  cb.program_row(1, bits_from_string("1111"));
  for (std::size_t c = 0; c < 4; ++c)
    CHECK(cb.cell(1, c).resistance_ohms == 1e3);
}

TEST_CASE("reprogramming the same pattern keeps phases and counts cycles") {
  Crossbar cb(1, 4, DeviceParams{}, 7);
  const BitRow bits = bits_from_string("1100");
  cb.program_row(0, bits);
  cb.program_row(0, bits);
  CHECK(cb.cell(0, 0).phase == PhaseState::Crystalline);
  CHECK(cb.cell(0, 0).set_count == 2);
  CHECK(cb.cell(0, 3).phase == PhaseState::Amorphous);
  CHECK(cb.cell(0, 3).reset_count == 2);
}

TEST_CASE("program_row bounds") {
  Crossbar cb(2, 4, exact_params(), 7);
  CHECK_THROWS_AS(cb.program_row(2, bits_from_string("0000")),
                  IndexOutOfRange);
  CHECK_THROWS_AS(cb.program_row(0, bits_from_string("000")),
                  InvalidDimensions);
}

TEST_CASE("bit string helpers") {
  CHECK(bits_to_string(bits_from_string("0110")) == "0110");
  CHECK_THROWS_AS(bits_from_string("01x0"), InvalidParams);
  CHECK_THROWS_AS(bits_from_string(""), InvalidParams);
}

TEST_CASE("bit-line resistance follows the parallel formula") {
  Crossbar cb(3, 1, exact_params(), 7);
  const std::size_t r01[] = {0, 1};
  const std::size_t r012[] = {0, 1, 2};

  // two amorphous cells: 100 Mohm || 100 Mohm
  CHECK(cb.bitline_resistance(r01, 0) == doctest::Approx(5e7).epsilon(1e-12));

  cb.program_row(0, bits_from_string("1"));
  CHECK(cb.bitline_resistance(r01, 0) ==
        doctest::Approx(parallel_r({1e3, 1e8})).epsilon(1e-12));
  CHECK(cb.bitline_resistance(r01, 0) == doctest::Approx(999.99).epsilon(1e-6));

  cb.program_row(1, bits_from_string("1"));
  cb.program_row(2, bits_from_string("1"));
  CHECK(cb.bitline_resistance(r012, 0) ==
        doctest::Approx(1e3 / 3.0).epsilon(1e-12));
}

TEST_CASE("bit-line current reproduces the aggregate magnitudes") {
  Crossbar cb(3, 1, exact_params(), 7);
  const std::size_t r01[] = {0, 1};
  const std::size_t r012[] = {0, 1, 2};

  CHECK(cb.bitline_current(r01, 0, 0.4) ==
        doctest::Approx(8e-9).epsilon(1e-12));  // 2 high cells
  CHECK(cb.bitline_current(r012, 0, 0.4) ==
        doctest::Approx(1.2e-8).epsilon(1e-12));  // 3 high cells

  cb.program_row(0, bits_from_string("1"));
  cb.program_row(1, bits_from_string("1"));
  CHECK(cb.bitline_current(r01, 0, 0.4) ==
        doctest::Approx(0.8e-3).epsilon(1e-12));  // 2 low cells
}

TEST_CASE("activation validation") {
  Crossbar cb(3, 2, exact_params(), 7);
  const std::vector<std::size_t> empty;
  const std::size_t bad_row[] = {0, 3};
  const std::size_t dup[] = {1, 1};
  const std::size_t ok[] = {0};
  CHECK_THROWS_AS(cb.bitline_resistance(empty, 0), EmptyActivation);
  CHECK_THROWS_AS(cb.bitline_resistance(bad_row, 0), IndexOutOfRange);
  CHECK_THROWS_AS(cb.bitline_resistance(ok, 2), IndexOutOfRange);
  CHECK_THROWS_AS(cb.bitline_resistance(dup, 0), ArityMismatch);
  CHECK_THROWS_AS(cb.bitline_current(ok, 0, 0.0), InvalidParams);
}

TEST_CASE("parallel algebra properties over random arrays") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  std::uniform_int_distribution<int> bit(0, 1);

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = dim(gen);
    Crossbar cb(rows, 2, DeviceParams{}, gen());
    for (std::size_t r = 0; r < rows; ++r) {
      BitRow bits = {static_cast<std::uint8_t>(bit(gen)),
                     static_cast<std::uint8_t>(bit(gen))};
      cb.program_row(r, bits);
    }

    std::vector<std::size_t> active(rows);
    for (std::size_t r = 0; r < rows; ++r) active[r] = r;
    std::shuffle(active.begin(), active.end(), gen);
    const std::size_t subset_size = 1 + gen() % rows;
    std::vector<std::size_t> subset(active.begin(),
                                    active.begin() + subset_size);

    const double r_subset = cb.bitline_resistance(subset, 0);

    // never above the smallest activated resistance; equal only for one row
    double r_min = 1e300;
    for (std::size_t r : subset)
      r_min = std::min(r_min, cb.cell(r, 0).resistance_ohms);
    if (subset.size() == 1)
      CHECK(r_subset == doctest::Approx(r_min).epsilon(1e-12));
    else
      CHECK(r_subset < r_min);

    // permutation invariance
    std::vector<std::size_t> shuffled = subset;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(cb.bitline_resistance(shuffled, 0) == r_subset);

    // adding a row never increases the resistance
    if (subset.size() < rows) {
      std::vector<std::size_t> larger(active.begin(),
                                      active.begin() + subset_size + 1);
      CHECK(cb.bitline_resistance(larger, 0) <= r_subset);
    }

    // single-row activation reduces to the cell current
    const std::size_t one[] = {subset[0]};
    CHECK(cb.bitline_current(one, 0, 0.4) ==
          doctest::Approx(cell_current(cb.cell(subset[0], 0), 0.4))
              .epsilon(1e-12));
  }
}

}  // TEST_SUITE
