#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "dcmon/dc/spec.hpp"
#include "dcmon/dc/trace_io.hpp"
#include "dcmon/error.hpp"
#include "dcmon/tools/commands.hpp"

namespace {

using namespace dcmon;
using namespace dcmon::tools;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool json = false;

  EngineConfig load() const {
    EngineConfig c = config_path.empty() ? EngineConfig{} : load_config(config_path);
    if (seed) c.seed = *seed;
    return c;
  }
  OutputFormat output() const { return json ? OutputFormat::Json : OutputFormat::Table; }
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("-c,--config", common.config_path, "Engine config (JSON)")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", common.seed, "Override the config seed");
  app->add_flag("--json", common.json, "Machine-readable output (JSON lines)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// Opens `path` for reading; "-" is standard input.
std::unique_ptr<std::istream> open_in(const std::string& path) {
  if (path == "-") return std::make_unique<std::istream>(std::cin.rdbuf());
  auto f = std::make_unique<std::ifstream>(path);
  if (!*f) throw ConfigError("cannot open '" + path + "'");
  return f;
}

/// Opens `path` for writing; "-" is standard output.
std::unique_ptr<std::ostream> open_out(const std::string& path) {
  if (path == "-") return std::make_unique<std::ostream>(std::cout.rdbuf());
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

dca::StreamFormat stream_format(const std::string& name, const std::string& path) {
  if (name == "json") return dca::StreamFormat::JsonLines;
  if (name == "csv") return dca::StreamFormat::Csv;
  return path == "-" ? dca::StreamFormat::JsonLines : dca::format_for_path(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcmon: dendritic cell anomaly detection with duration calculus monitoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dcmon 0.1.0");

  // detect
  Common detect_common;
  std::string detect_input;
  std::string detect_format = "auto";
  std::string detect_analysis;
  std::optional<std::size_t> by_count;
  std::optional<double> by_time;
  std::optional<double> threshold;
  auto* detect = app.add_subcommand("detect", "Run detection over an input stream");
  add_common(detect, detect_common);
  detect->add_option("-i,--input", detect_input, "Input stream ('-' for stdin)");
  detect->add_option("--format", detect_format, "Input format")
      ->check(CLI::IsMember({"auto", "json", "csv"}));
  detect->add_option("--analysis", detect_analysis, "Analysis mode")
      ->check(CLI::IsMember({"offline", "segmented"}));
  auto* count_opt = detect->add_option("--by-count", by_count, "Segment every z items");
  detect->add_option("--by-time", by_time, "Segment every delta seconds")->excludes(count_opt);
  detect->add_option("--threshold", threshold, "Anomaly threshold on MCAV");

  // simulate
  Common sim_common;
  std::string sim_output = "-";
  std::string sim_labels;
  std::string sim_format = "auto";
  std::optional<std::size_t> sim_iterations;
  std::optional<double> sim_fraction;
  auto* simulate = app.add_subcommand("simulate", "Generate a labelled synthetic input stream");
  add_common(simulate, sim_common);
  simulate->add_option("-o,--output", sim_output, "Stream output ('-' for stdout)");
  simulate->add_option("--labels", sim_labels, "Ground-truth labels output");
  simulate->add_option("--format", sim_format, "Output format")
      ->check(CLI::IsMember({"auto", "json", "csv"}));
  simulate->add_option("--iterations", sim_iterations, "Number of signal instances");
  simulate->add_option("--anomaly-fraction", sim_fraction, "Fraction of anomalous iterations");

  // monitor
  std::string spec_path;
  std::string trace_path;
  std::optional<int> trace_cell;
  MonitorOptions monitor_options;
  std::vector<std::string> sets;
  std::vector<dc::Tick> interval;
  bool monitor_json = false;
  auto* monitor = app.add_subcommand("monitor", "Check DC formulas against a recorded trace");
  monitor->add_option("-s,--spec", spec_path, "Spec file (default: bundled single-cell spec)");
  monitor->add_option("-t,--trace", trace_path,
                      "Trace file (default: bundled one-lifespan trace)");
  monitor->add_option("--cell", trace_cell, "Cell id in a multiplexed trace file");
  monitor->add_option("-f,--formula", monitor_options.formulas, "Formula to check (repeatable)");
  monitor->add_option("--set", sets, "Bind a global: name=value (repeatable)");
  monitor->add_option("--interval", interval, "Check on [b, e] instead of the whole trace")
      ->expected(2);
  monitor->add_flag("--json", monitor_json, "Machine-readable output");

  // realtime
  RealtimeOptions rt;
  std::string violate;
  bool rt_json = false;
  auto* realtime = app.add_subcommand("realtime", "Run the single-cell real-time guarantee experiment");
  realtime->add_option("--runs", rt.runs, "Number of simulated lifespans");
  realtime->add_option("--seed", rt.seed, "Experiment seed");
  realtime->add_option("--violate", violate, "Falsification mode")
      ->check(CLI::IsMember({"des1"}));
  realtime->add_flag("--json", rt_json, "Machine-readable output");

  // bench
  Common bench_common;
  BenchOptions bench_options;
  auto* bench = app.add_subcommand("bench", "Offline vs segmented analysis latency");
  add_common(bench, bench_common);
  bench->add_option("-m,--m", bench_options.m_values, "Signal counts")
                    ->delimiter(',');
  bench->add_flag("--wall-clock", bench_options.wall_clock, "Also time the host");

  // record
  Common record_common;
  std::string record_input;
  std::string record_output = "-";
  std::string record_format = "auto";
  bool record_wall = false;
  auto* record = app.add_subcommand("record", "Record per-cell behavioural traces");
  add_common(record, record_common);
  record->add_option("-i,--input", record_input, "Input stream ('-' for stdin)");
  record->add_option("-o,--output", record_output, "Trace output ('-' for stdout)");
  record->add_option("--format", record_format, "Input format")
      ->check(CLI::IsMember({"auto", "json", "csv"}));
  record->add_flag("--wall-clock", record_wall, "Pad iterations to the iteration period");

  // config
  bool print_defaults = false;
  std::string check_path;
  auto* config = app.add_subcommand("config", "Inspect engine configuration");
  config->add_flag("--print-defaults", print_defaults, "Print the default config");
  config->add_option("--check", check_path, "Validate a config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*detect) {
      EngineConfig c = detect_common.load();
      if (!detect_analysis.empty()) {
        c.analysis = detect_analysis == "offline" ? AnalysisMode::Offline : AnalysisMode::Segmented;
      }
      if (by_count) c.segmentation = analysis::SegmentationPolicy::by_count(*by_count);
      if (by_time) c.segmentation = analysis::SegmentationPolicy::by_time(*by_time);
      if ((by_count || by_time) && detect_analysis.empty()) c.analysis = AnalysisMode::Segmented;
      if (threshold) c.threshold = *threshold;
      std::string path = detect_input.empty() ? c.input.value_or("-") : detect_input;
      auto in = open_in(path);
      auto out = open_out(c.output.value_or("-"));
      cmd_detect(c, *in, stream_format(detect_format, path), *out, detect_common.output());
      return kExitOk;
    }
    if (*simulate) {
      EngineConfig c = sim_common.load();
      if (sim_iterations) c.simulation.iterations = *sim_iterations;
      if (sim_fraction) c.simulation.anomaly_fraction = *sim_fraction;
      c.validate();
      auto out = open_out(sim_output);
      std::unique_ptr<std::ostream> labels;
      if (!sim_labels.empty()) labels = open_out(sim_labels);
      cmd_simulate(c, *out, stream_format(sim_format, sim_output), labels.get());
      return kExitOk;
    }
    if (*monitor) {
      const std::string spec_text =
          spec_path.empty() ? std::string(dc::bundled_spec_text()) : read_file(spec_path);
      const dc::TimedTrace trace =
          trace_path.empty() ? dc::read_trace_text(dc::bundled_unit_lifespan_trace_text())
                             : dc::read_trace_text(read_file(trace_path), trace_cell);
      for (const auto& s : sets) monitor_options.overrides.push_back(parse_assignment(s));
      if (interval.size() == 2) monitor_options.interval = dc::Interval{interval[0], interval[1]};
      monitor_options.output = monitor_json ? OutputFormat::Json : OutputFormat::Table;
      return cmd_monitor(spec_text, trace, monitor_options, std::cout);
    }
    if (*realtime) {
      rt.violate = !violate.empty();
      if (rt.violate && realtime->count("--runs") == 0) rt.runs = 100;
      rt.output = rt_json ? OutputFormat::Json : OutputFormat::Table;
      return cmd_realtime(rt, std::cout);
    }
    if (*bench) {
      bench_options.output = bench_common.output();
      cmd_bench(bench_common.load(), bench_options, std::cout);
      return kExitOk;
    }
    if (*record) {
      EngineConfig c = record_common.load();
      std::string path = record_input.empty() ? c.input.value_or("-") : record_input;
      auto in = open_in(path);
      auto out = open_out(record_output);
      cmd_record(c, *in, stream_format(record_format, path), *out,
                 record_wall ? instrument::TimingMode::WallClock : instrument::TimingMode::EventTime);
      return kExitOk;
    }
    if (*config) {
      if (!check_path.empty()) {
        load_config(check_path);
        std::cout << "config ok\n";
        return kExitOk;
      }
      if (print_defaults) {
        std::cout << to_json(EngineConfig{});
        return kExitOk;
      }
      std::cerr << config->help();
      return kExitUsage;
    }
  } catch (const dcmon::Error& e) {
    std::cerr << "dcmon: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
