#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pinatubo/analysis.hpp"
#include "pinatubo/config.hpp"
#include "pinatubo/csv.hpp"
#include "pinatubo/logic_engine.hpp"

namespace {

using namespace pinatubo;

struct CommonArgs {
  std::string op_name;
  int inputs = 2;
  int k = 0;
  std::uint64_t trials = 100;
  std::optional<double> sigma_override;
  std::optional<double> ref_override_ohms;
  std::optional<std::uint64_t> seed_override;
  std::string out_path;
};

LogicOp resolve_op(const std::string& name, int k) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "read") return LogicOp::read();
  if (lower == "or") return LogicOp::bit_or();
  if (lower == "and") return LogicOp::bit_and();
  if (lower == "xor") return LogicOp::bit_xor();
  if (lower == "not") return LogicOp::bit_not();
  if (lower == "thresh" || lower == "threshold") {
    if (k < 1)
      throw ConfigError("--op thresh requires --k <count> with k >= 1");
    return LogicOp::threshold(k);
  }
  throw ConfigError("unknown op '" + name + "'");
}

DeviceParams effective_params(const Config& cfg, const CommonArgs& args) {
  DeviceParams params = cfg.device;
  if (args.sigma_override) params.sigma_decades = *args.sigma_override;
  if (args.seed_override) params.seed = *args.seed_override;
  params.validate();
  return params;
}

/// CSV goes to --out (atomic) or stdout; the one-line summary goes to the
/// other stream so piping the CSV stays clean.
void emit(const std::string& csv, const std::string& out_path,
          const std::string& summary) {
  if (out_path.empty()) {
    std::cout << csv;
    std::cerr << summary << '\n';
  } else {
    write_file_atomic(out_path, csv);
    std::cout << summary << " -> " << out_path << '\n';
  }
}

int cmd_calibrate(const Config& cfg, const CommonArgs& args) {
  const LogicOp op = resolve_op(args.op_name, args.k);
  const DeviceParams params = effective_params(cfg, args);
  const CalibrationReport report =
      calibrate_report(op, args.inputs, params);

  std::cout << "op: " << op.name() << "\ninputs: " << args.inputs << '\n';
  if (report.boundary_pairs.size() == 1) {
    const ClassBoundaries& b = report.boundary_pairs[0];
    std::cout << "r_one_worst_ohms: " << format_double(b.r_one_worst_ohms)
              << '\n'
              << "r_zero_worst_ohms: " << format_double(b.r_zero_worst_ohms)
              << '\n'
              << "ref_primary_ohms: "
              << format_double(report.config.ref_primary_ohms) << '\n';
  } else {
    const ClassBoundaries& low = report.boundary_pairs[0];
    const ClassBoundaries& high = report.boundary_pairs[1];
    std::cout << "low_side_boundaries_ohms: "
              << format_double(low.r_one_worst_ohms) << " .. "
              << format_double(low.r_zero_worst_ohms) << '\n'
              << "high_side_boundaries_ohms: "
              << format_double(high.r_one_worst_ohms) << " .. "
              << format_double(high.r_zero_worst_ohms) << '\n'
              << "ref_primary_ohms: "
              << format_double(report.config.ref_primary_ohms) << '\n'
              << "ref_secondary_ohms: "
              << format_double(*report.config.ref_secondary_ohms) << '\n';
  }
  if (report.config.invert_output) std::cout << "invert_output: true\n";
  std::cout << "margin_ratio: " << format_double(report.margin_ratio) << '\n';
  if (report.low_margin_warning)
    std::cout << "warning: margin_ratio "
              << format_double(report.margin_ratio) << " < 10^(6*sigma) = "
              << format_double(std::pow(10.0, 6.0 * params.sigma_decades))
              << "; reference placement is sensitive to programming "
                 "variability\n";
  return 0;
}

int cmd_truthtable(const Config& cfg, const CommonArgs& args,
                   bool exhaustive) {
  const LogicOp op = resolve_op(args.op_name, args.k);
  const DeviceParams params = effective_params(cfg, args);
  const auto table = truth_table(
      op, args.inputs, params, args.ref_override_ohms, args.trials,
      params.seed,
      exhaustive ? ClassEnumeration::Exhaustive : ClassEnumeration::Multiset);

  std::uint64_t errors = 0;
  for (const ClassStats& cls : table) errors += cls.errors;
  std::ostringstream summary;
  summary << "truthtable op=" << op.name() << " n=" << args.inputs
          << " trials=" << args.trials << " classes=" << table.size()
          << " errors=" << errors;
  emit(truthtable_csv(table), args.out_path, summary.str());
  return 0;
}

int cmd_regions(const Config& cfg, const CommonArgs& args,
                int bins_per_decade) {
  const LogicOp op = resolve_op(args.op_name, args.k);
  const DeviceParams params = effective_params(cfg, args);
  const RegionHistogram hist = region_histogram(
      op, args.inputs, params, args.trials, bins_per_decade, params.seed);

  std::ostringstream summary;
  summary << "regions op=" << op.name() << " n=" << args.inputs
          << " trials=" << args.trials << " classes=" << hist.classes.size()
          << " gap_decades=" << format_double(hist.class_gap_decades());
  emit(regions_csv(hist), args.out_path, summary.str());
  return 0;
}

int cmd_margins(const Config& cfg, const CommonArgs& args,
                const std::string& inputs_sweep,
                const std::string& sigma_sweep) {
  const LogicOp op = resolve_op(args.op_name, args.k);
  DeviceParams params = cfg.device;
  if (args.seed_override) params.seed = *args.seed_override;
  params.validate();

  const std::vector<int> n_values = parse_int_sweep(inputs_sweep);
  const std::vector<double> sigma_values =
      sigma_sweep.empty() ? std::vector<double>{params.sigma_decades}
                          : parse_sweep(sigma_sweep);

  const auto rows =
      margin_sweep(op, params, n_values, sigma_values, args.trials,
                   params.seed);
  std::ostringstream summary;
  summary << "margins op=" << op.name() << " points=" << rows.size()
          << " trials=" << args.trials;
  emit(margins_csv(rows), args.out_path, summary.str());
  return 0;
}

int cmd_run(const Config& cfg, const CommonArgs& args,
            const std::string& script_path) {
  std::ifstream in(script_path, std::ios::binary);
  if (!in) throw IoError("cannot open script file '" + script_path + "'");
  const std::vector<ScriptCommand> script = parse_script(in);

  const DeviceParams params = effective_params(cfg, args);
  Crossbar cb(cfg.rows, cfg.cols, params, params.seed, cfg.set_pulse,
              cfg.reset_pulse);
  const ScriptResult result = run_script(cb, script);

  std::ostringstream summary;
  summary << "executed " << result.trace.size() << " commands; stats:"
          << " set_pulses=" << result.stats.set_pulses
          << " reset_pulses=" << result.stats.reset_pulses
          << " read_activations=" << result.stats.read_activations
          << " rows_activated_total=" << result.stats.rows_activated_total;
  emit(trace_csv(result.trace), args.out_path, summary.str());
  return 0;
}

void add_common_options(CLI::App* sub, CommonArgs& args, bool with_ref) {
  sub->add_option("--op", args.op_name,
                  "logic operation: read, or, and, xor, not, thresh")
      ->required()
      ->check(CLI::IsMember({"read", "or", "and", "xor", "not", "thresh",
                             "threshold"},
                            CLI::ignore_case));
  sub->add_option("--inputs", args.inputs, "number of activated rows n")
      ->capture_default_str();
  sub->add_option("--k", args.k, "threshold count (thresh only)");
  sub->add_option("--trials", args.trials, "Monte Carlo trials per class")
      ->capture_default_str();
  sub->add_option("--sigma", args.sigma_override,
                  "override sigma_decades (std dev of log10 R)");
  if (with_ref)
    sub->add_option("--ref", args.ref_override_ohms,
                    "override the primary reference resistance (ohms)");
  sub->add_option("--seed", args.seed_override, "override the RNG seed");
  sub->add_option("--out", args.out_path, "output CSV path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app(
      "Behavioral simulator of sense-amplifier bitwise logic on a "
      "phase-change-memory crossbar (Pinatubo-style multi-row activation)");
  app.require_subcommand(0, 1);

  std::string config_path;
  bool dump_config = false;
  app.add_option("--config", config_path,
                 "JSON config file (env PINATUBO_SIM_CONFIG)")
      ->envname("PINATUBO_SIM_CONFIG");
  app.add_flag("--dump-config", dump_config,
               "print the effective config JSON to stdout");
  app.footer(
      "Default config (all fields optional; resistances in ohms, voltages in "
      "volts,\ntimes in ns, currents in amperes):\n" +
      pinatubo::Config{}.dump_json());

  CommonArgs cal_args, tt_args, reg_args, mar_args, run_args;

  CLI::App* cal = app.add_subcommand(
      "calibrate", "print boundaries, reference(s) and margin for an op");
  add_common_options(cal, cal_args, /*with_ref=*/false);

  CLI::App* tt = app.add_subcommand(
      "truthtable", "Monte Carlo truth table with per-class current stats");
  bool exhaustive = false;
  add_common_options(tt, tt_args, /*with_ref=*/true);
  tt->add_flag("--exhaustive", exhaustive,
               "enumerate all 2^n combinations instead of the n+1 multisets");

  CLI::App* reg = app.add_subcommand(
      "regions", "log10-current histogram per input class");
  int bins_per_decade = 10;
  add_common_options(reg, reg_args, /*with_ref=*/false);
  reg->add_option("--bins-per-decade", bins_per_decade, "histogram resolution")
      ->capture_default_str();

  CLI::App* mar = app.add_subcommand(
      "margins", "margin ratio and error rate over n and sigma sweeps");
  std::string inputs_sweep = "2";
  std::string sigma_sweep;
  mar->add_option("--op", mar_args.op_name,
                  "logic operation: read, or, and, xor, not, thresh")
      ->required()
      ->check(CLI::IsMember({"read", "or", "and", "xor", "not", "thresh",
                             "threshold"},
                            CLI::ignore_case));
  mar->add_option("--k", mar_args.k, "threshold count (thresh only)");
  mar->add_option("--inputs", inputs_sweep,
                  "input count or sweep start:stop:step")
      ->capture_default_str();
  mar->add_option("--sigma", sigma_sweep,
                  "sigma value or sweep start:stop:step (default: config "
                  "sigma_decades)");
  mar->add_option("--trials", mar_args.trials, "Monte Carlo trials per class")
      ->capture_default_str();
  mar->add_option("--seed", mar_args.seed_override, "override the RNG seed");
  mar->add_option("--out", mar_args.out_path,
                  "output CSV path (default stdout)");

  CLI::App* run = app.add_subcommand("run", "execute an operation script");
  std::string script_path;
  run->add_option("script", script_path, "script file (PROG/OR/AND/XOR/NOT/"
                                         "THRESH/READ commands)")
      ->required();
  run->add_option("--seed", run_args.seed_override, "override the RNG seed");
  run->add_option("--out", run_args.out_path,
                  "trace CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    pinatubo::Config cfg;
    if (!config_path.empty()) cfg = pinatubo::Config::load_file(config_path);

    if (dump_config) {
      std::cout << cfg.dump_json();
      if (app.get_subcommands().empty()) return 0;
    }

    if (cal->parsed()) return cmd_calibrate(cfg, cal_args);
    if (tt->parsed()) return cmd_truthtable(cfg, tt_args, exhaustive);
    if (reg->parsed()) return cmd_regions(cfg, reg_args, bins_per_decade);
    if (mar->parsed()) return cmd_margins(cfg, mar_args, inputs_sweep,
                                          sigma_sweep);
    if (run->parsed()) return cmd_run(cfg, run_args, script_path);

    if (!dump_config) std::cerr << app.help();
    return 0;
  } catch (const pinatubo::InfeasibleGate& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const pinatubo::SimError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
