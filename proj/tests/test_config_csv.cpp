#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "pinatubo/config.hpp"
#include "pinatubo/csv.hpp"

using namespace pinatubo;

TEST_SUITE("config_csv") {

TEST_CASE("defaults satisfy the documented values") {
  const Config cfg;
  cfg.validate();
  CHECK(cfg.rows == 16);
  CHECK(cfg.cols == 64);
  CHECK(cfg.device.r_low_ohms == 1e3);
  CHECK(cfg.device.r_high_ohms == 1e8);
  CHECK(cfg.device.sigma_decades == 0.1);
  CHECK(cfg.device.read_voltage_v == 0.4);
  CHECK(cfg.device.seed == 42);
  CHECK(cfg.set_pulse.amplitude_v == 2.7);
  CHECK(cfg.set_pulse.fall_ns == 3000);
  CHECK(cfg.reset_pulse.amplitude_v == 4.0);
}

TEST_CASE("partial JSON overrides only the given fields") {
  const Config cfg = Config::load_json(
      R"({"rows":4,"sigma_decades":0.0,"set_pulse":{"width_ns":200}})");
  CHECK(cfg.rows == 4);
  CHECK(cfg.cols == 64);
  CHECK(cfg.device.sigma_decades == 0.0);
  CHECK(cfg.set_pulse.width_ns == 200);
  CHECK(cfg.set_pulse.amplitude_v == 2.7);
}

TEST_CASE("config errors carry the origin and field") {
  auto message_of = [](const char* text) {
    try {
      Config::load_json(text, "cfg.json");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };

  CHECK(message_of(R"({"rws":4})").find("rws") != std::string::npos);
  CHECK(message_of(R"({"rows":"four"})").find("rows") != std::string::npos);
  CHECK(message_of("{nope").find("cfg.json") != std::string::npos);
  // invariant violations surface as config errors too
  CHECK_THROWS_AS(Config::load_json(R"({"r_low_ohms":1e9})"), ConfigError);
  CHECK_THROWS_AS(Config::load_json(R"({"rows":0})"), ConfigError);
  // a set pulse that classifies as a reset is rejected
  CHECK_THROWS_AS(
      Config::load_json(R"({"set_pulse":{"amplitude_v":4.0,"width_ns":10}})"),
      ConfigError);
  CHECK_THROWS_AS(Config::load_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("dumped config reloads to the identical configuration") {
  Config cfg;
  cfg.rows = 8;
  cfg.device.sigma_decades = 0.25;
  cfg.device.seed = 1234;
  cfg.set_pulse.width_ns = 60;

  const Config reloaded = Config::load_json(cfg.dump_json());
  CHECK(reloaded.rows == cfg.rows);
  CHECK(reloaded.cols == cfg.cols);
  CHECK(reloaded.device.r_low_ohms == cfg.device.r_low_ohms);
  CHECK(reloaded.device.sigma_decades == cfg.device.sigma_decades);
  CHECK(reloaded.device.seed == cfg.device.seed);
  CHECK(reloaded.set_pulse.width_ns == cfg.set_pulse.width_ns);
  CHECK(reloaded.reset_pulse.amplitude_v == cfg.reset_pulse.amplitude_v);
  // and the dump itself is stable
  CHECK(reloaded.dump_json() == cfg.dump_json());
}

TEST_CASE("sweep parsing") {
  CHECK(parse_sweep("2") == std::vector<double>{2.0});
  const auto sigmas = parse_sweep("0:0.5:0.05");
  REQUIRE(sigmas.size() == 11);  // endpoints inclusive
  CHECK(sigmas.front() == 0.0);
  CHECK(sigmas.back() == doctest::Approx(0.5));

  CHECK(parse_int_sweep("2:8:2") == std::vector<int>{2, 4, 6, 8});
  CHECK(parse_int_sweep("3") == std::vector<int>{3});

  CHECK_THROWS_AS(parse_sweep("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("5:3:1"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("0:1:0"), ConfigError);
  CHECK_THROWS_AS(parse_sweep("abc"), ConfigError);
  CHECK_THROWS_AS(parse_int_sweep("0:1:0.4"), ConfigError);
}

TEST_CASE("doubles format as round-trippable scientific notation") {
  CHECK(format_double(4e-4) == "4e-04");
  CHECK(format_double(8e-9) == "8e-09");
  CHECK(format_double(0.0) == "0e+00");

  std::mt19937_64 gen(55);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-12, 12);
  for (int i = 0; i < 1000; ++i) {
    const double v = mantissa(gen) * std::pow(10.0, exponent(gen));
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
    CHECK(text.find('e') != std::string::npos);
  }
}

TEST_CASE("atomic file writes leave no temp files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pinatubo_csv_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.csv";

  write_file_atomic(target.string(), "a,b\n1,2\n");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n");

  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir))
    ++entries;
  CHECK(entries == 1);

  CHECK_THROWS_AS(write_file_atomic("/nonexistent-dir/x/y.csv", "data"),
                  IoError);
  fs::remove_all(dir);
}

}  // TEST_SUITE
