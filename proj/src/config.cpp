#include "pinatubo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pinatubo {

namespace {

using json = nlohmann::ordered_json;

double get_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ConfigError("field '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& key,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned())
    throw ConfigError("field '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& scope) {
  for (const auto& item : obj.items())
    if (!known.contains(item.key()))
      throw ConfigError("unknown field '" + scope + item.key() + "'");
}

PulseSpec get_pulse(const json& obj, const std::string& key,
                    const PulseSpec& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_object())
    throw ConfigError("field '" + key + "' must be an object");
  reject_unknown_keys(v, {"amplitude_v", "rise_ns", "width_ns", "fall_ns"},
                      key + ".");
  PulseSpec pulse;
  pulse.amplitude_v = get_number(v, "amplitude_v", fallback.amplitude_v);
  pulse.rise_ns = get_number(v, "rise_ns", fallback.rise_ns);
  pulse.width_ns = get_number(v, "width_ns", fallback.width_ns);
  pulse.fall_ns = get_number(v, "fall_ns", fallback.fall_ns);
  return pulse;
}

json pulse_to_json(const PulseSpec& pulse) {
  return json{{"amplitude_v", pulse.amplitude_v},
              {"rise_ns", pulse.rise_ns},
              {"width_ns", pulse.width_ns},
              {"fall_ns", pulse.fall_ns}};
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError("invalid " + what + " '" + text + "'");
  return value;
}

}  // namespace

void Config::validate() const {
  if (rows < 1 || cols < 1)
    throw ConfigError("rows and cols must be >= 1");
  try {
    device.validate();
    set_pulse.validate();
    reset_pulse.validate();
    if (classify_pulse(set_pulse, device) != PulseClass::Set)
      throw ConfigError("set_pulse does not classify as a set pulse");
    if (classify_pulse(reset_pulse, device) != PulseClass::Reset)
      throw ConfigError("reset_pulse does not classify as a reset pulse");
  } catch (const ConfigError&) {
    throw;
  } catch (const SimError& e) {
    throw ConfigError(e.what());
  }
}

Config Config::load_json(const std::string& json_text,
                         const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.is_object())
    throw ConfigError(origin + ": config must be a JSON object");

  static const std::set<std::string> known = {
      "rows",          "cols",           "r_low_ohms",
      "r_high_ohms",   "sigma_decades",  "read_voltage_v",
      "read_v_max_v",  "set_v_min_v",    "set_v_max_v",
      "set_min_total_ns", "reset_v_min_v", "reset_max_width_ns",
      "set_pulse",     "reset_pulse",    "seed"};

  Config cfg;
  try {
    reject_unknown_keys(root, known, "");
    cfg.rows = static_cast<std::size_t>(get_uint(root, "rows", cfg.rows));
    cfg.cols = static_cast<std::size_t>(get_uint(root, "cols", cfg.cols));
    DeviceParams& d = cfg.device;
    d.r_low_ohms = get_number(root, "r_low_ohms", d.r_low_ohms);
    d.r_high_ohms = get_number(root, "r_high_ohms", d.r_high_ohms);
    d.sigma_decades = get_number(root, "sigma_decades", d.sigma_decades);
    d.read_voltage_v = get_number(root, "read_voltage_v", d.read_voltage_v);
    d.read_v_max_v = get_number(root, "read_v_max_v", d.read_v_max_v);
    d.set_v_min_v = get_number(root, "set_v_min_v", d.set_v_min_v);
    d.set_v_max_v = get_number(root, "set_v_max_v", d.set_v_max_v);
    d.set_min_total_ns =
        get_number(root, "set_min_total_ns", d.set_min_total_ns);
    d.reset_v_min_v = get_number(root, "reset_v_min_v", d.reset_v_min_v);
    d.reset_max_width_ns =
        get_number(root, "reset_max_width_ns", d.reset_max_width_ns);
    d.seed = get_uint(root, "seed", d.seed);
    cfg.set_pulse = get_pulse(root, "set_pulse", cfg.set_pulse);
    cfg.reset_pulse = get_pulse(root, "reset_pulse", cfg.reset_pulse);
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

Config Config::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_json(buffer.str(), path);
}

std::string Config::dump_json() const {
  json root;
  root["rows"] = rows;
  root["cols"] = cols;
  root["r_low_ohms"] = device.r_low_ohms;
  root["r_high_ohms"] = device.r_high_ohms;
  root["sigma_decades"] = device.sigma_decades;
  root["read_voltage_v"] = device.read_voltage_v;
  root["read_v_max_v"] = device.read_v_max_v;
  root["set_v_min_v"] = device.set_v_min_v;
  root["set_v_max_v"] = device.set_v_max_v;
  root["set_min_total_ns"] = device.set_min_total_ns;
  root["reset_v_min_v"] = device.reset_v_min_v;
  root["reset_max_width_ns"] = device.reset_max_width_ns;
  root["set_pulse"] = pulse_to_json(set_pulse);
  root["reset_pulse"] = pulse_to_json(reset_pulse);
  root["seed"] = device.seed;
  return root.dump(2) + "\n";
}

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);

  if (parts.size() == 1) return {parse_double(parts[0], "sweep value")};
  if (parts.size() != 3)
    throw ConfigError("sweep must be a single value or start:stop:step, got '" +
                      text + "'");

  const double start = parse_double(parts[0], "sweep start");
  const double stop = parse_double(parts[1], "sweep stop");
  const double step = parse_double(parts[2], "sweep step");
  if (step <= 0.0) throw ConfigError("sweep step must be > 0");
  if (stop < start) throw ConfigError("sweep stop must be >= start");

  std::vector<double> values;
  for (std::size_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + step / 2.0) break;
    values.push_back(v);
  }
  return values;
}

std::vector<int> parse_int_sweep(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_sweep(text)) {
    const double rounded = std::nearbyint(v);
    if (std::abs(v - rounded) > 1e-9 || rounded < 0.0 || rounded > 1e9)
      throw ConfigError("sweep value '" + std::to_string(v) +
                        "' is not a non-negative integer");
    values.push_back(static_cast<int>(rounded));
  }
  return values;
}

}  // namespace pinatubo
