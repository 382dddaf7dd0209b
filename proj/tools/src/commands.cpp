#include "dcmon/tools/commands.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dcmon/dc/eval.hpp"
#include "dcmon/dc/parser.hpp"
#include "dcmon/dc/spec.hpp"
#include "dcmon/dc/trace_io.hpp"
#include "dcmon/dca/simulate.hpp"
#include "dcmon/error.hpp"
#include "dcmon/monitor/monitor.hpp"
#include "json.hpp"

namespace dcmon::tools {

using nlohmann::json;

namespace {

dca::PopulationConfig population_config(const EngineConfig& config) {
  dca::PopulationConfig pc = config.population;
  pc.seed = config.seed;
  return pc;
}

void write_report(std::ostream& out, const analysis::McavReport& report, OutputFormat output) {
  if (output == OutputFormat::Json) {
    analysis::write_json(out, report);
  } else {
    analysis::write_table(out, report);
  }
}

std::string interval_text(dc::Interval iv) {
  return "[" + std::to_string(iv.begin) + ", " + std::to_string(iv.end) + "]";
}

}  // namespace

DetectResult cmd_detect(const EngineConfig& config, std::istream& in, dca::StreamFormat format,
                        std::ostream& out, OutputFormat output) {
  config.validate();
  dca::Population population(population_config(config));
  dca::BatchReader reader(in, format);
  DetectResult result;
  result.report.threshold = config.threshold;
  std::vector<analysis::McavReport> segments;
  std::vector<analysis::Item> offline_items;
  analysis::Segmenter segmenter(config.segmentation);
  std::size_t ordinal = 0;

  auto close = [&](const analysis::Segment& s) {
    analysis::McavReport r = analysis::analyse_items(s.items, config.threshold);
    r.coverage.segment = s.id;
    if (output == OutputFormat::Json) {
      out << json{{"event", "segment_closed"}, {"segment", s.id}, {"close_time", s.close_time},
                  {"items", s.items.size()}}
                 .dump()
          << '\n';
    } else {
      out << "segment " << s.id << " closed at t=" << s.close_time << " (" << s.items.size()
          << " items)\n";
    }
    write_report(out, r, output);
    segments.push_back(std::move(r));
  };

  while (auto batch = reader.next()) {
    for (const auto& p : population.step(*batch)) {
      ++result.presentations;
      const std::span<const dca::Presentation> one(&p, 1);
      for (auto& item : analysis::flatten(one, ordinal)) {
        ++ordinal;
        if (config.analysis == AnalysisMode::Offline) {
          offline_items.push_back(std::move(item));
        } else if (auto s = segmenter.push(std::move(item))) {
          close(*s);
        }
      }
    }
  }
  if (config.analysis == AnalysisMode::Segmented) {
    if (auto s = segmenter.finish()) close(*s);
    result.segments = segments.size();
    result.report = segments.empty() ? result.report : analysis::merge(segments);
    if (output == OutputFormat::Table) out << "final\n";
    else out << json{{"event", "final"}, {"segments", segments.size()}}.dump() << '\n';
  } else {
    result.report = analysis::analyse_items(offline_items, config.threshold);
  }
  write_report(out, result.report, output);
  return result;
}

dca::Simulation cmd_simulate(const EngineConfig& config, std::ostream& records,
                             dca::StreamFormat format, std::ostream* labels) {
  dca::SimulationConfig sim = config.simulation;
  sim.seed = config.seed;
  sim.iteration_seconds = config.population.iteration_seconds;
  dca::Simulation s = dca::simulate(sim);
  dca::write_records(records, s.records, format);
  if (labels) dca::write_labels(*labels, s.labels);
  return s;
}

int cmd_monitor(std::string_view spec_text, const dc::TimedTrace& trace,
                const MonitorOptions& options, std::ostream& out) {
  dc::SpecBundle spec = dc::load_spec(spec_text);
  for (const auto& [name, value] : options.overrides) {
    if (!spec.declarations.globals.count(name)) {
      throw ConfigError("--set names undeclared global '" + name + "'");
    }
    spec.valuation.bind(name, value);
  }
  const dc::Interval iv = options.interval.value_or(dc::Interval{0, trace.horizon()});
  if (iv.begin < 0 || iv.end < iv.begin || iv.end > trace.horizon()) {
    throw RangeError("interval " + interval_text(iv) + " lies outside the trace horizon " +
                     std::to_string(trace.horizon()));
  }
  const std::vector<std::string> names =
      options.formulas.empty() ? spec.checked_names() : options.formulas;
  dc::Evaluator eval(trace);
  bool all = true;
  for (const auto& name : names) {
    const dc::Formula& f = spec.formula(name);
    const bool ok = eval.formula(f, spec.valuation, iv);
    std::optional<dc::Interval> witness;
    if (!ok && f->kind == dc::FormulaKind::Box) {
      witness = dc::first_violation(eval, f->lhs, spec.valuation, iv);
    }
    all = all && ok;
    if (options.output == OutputFormat::Json) {
      json row{{"formula", name}, {"holds", ok}, {"interval", {iv.begin, iv.end}}};
      if (witness) row["witness"] = {witness->begin, witness->end};
      out << row.dump() << '\n';
    } else {
      out << (ok ? "PASS " : "FAIL ") << name << " on " << interval_text(iv);
      if (witness) out << "  (violated on " << interval_text(*witness) << ")";
      out << '\n';
    }
  }
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_realtime(const RealtimeOptions& options, std::ostream& out) {
  monitor::ExperimentConfig ec;
  ec.seed = options.seed;
  ec.runs = options.violate ? 0 : options.runs;
  ec.violation_runs = options.violate ? options.runs : 0;
  const monitor::ExperimentSummary s = monitor::realtime_experiment(ec);
  const auto stats = s.slack_stats();
  bool pass;
  if (options.violate) {
    pass = s.des1_detected() == s.violating.size() && s.req_violations() > 0;
  } else {
    pass = s.req_holds() == s.conforming.size() && s.theorem_failures() == 0;
  }
  if (options.output == OutputFormat::Json) {
    json j{{"mode", options.violate ? "violate" : "conforming"},
           {"runs", options.runs},
           {"seed", options.seed},
           {"pass", pass}};
    if (options.violate) {
      j["des1_detected"] = s.des1_detected();
      j["req_violations"] = s.req_violations();
    } else {
      j["req_holds"] = s.req_holds();
      j["theorem_failures"] = s.theorem_failures();
    }
    if (stats) j["slack_seconds"] = {{"min", (*stats)[0]}, {"mean", (*stats)[1]}, {"max", (*stats)[2]}};
    out << j.dump() << '\n';
  } else if (options.violate) {
    out << "falsification runs: " << s.violating.size() << "\n"
        << "Des1 violations detected: " << s.des1_detected() << "/" << s.violating.size() << "\n"
        << "Req violations witnessed: " << s.req_violations() << "\n";
    for (const auto& run : s.violating) {
      if (run.verdict.req_holds) continue;
      for (const auto& w : run.verdict.witnesses) {
        if (w.formula != "Req") continue;
        out << "  run " << run.index << ": Req fails on ticks " << interval_text(w.interval)
            << ", int(I)+int(M) = "
            << to_string(Quantity(w.values.at("int(I)").rational() +
                                  w.values.at("int(M)").rational()))
            << " > b = " << to_string(w.values.at("b")) << '\n';
        break;
      }
      break;
    }
  } else {
    out << "conforming runs: " << s.conforming.size() << "\n"
        << "Req holds: " << s.req_holds() << "/" << s.conforming.size() << "\n"
        << "Des1 & Des2 without Req: " << s.theorem_failures() << "\n";
    if (stats) {
      out << std::fixed << std::setprecision(3) << "slack b - c (s): min " << (*stats)[0]
          << ", mean " << (*stats)[1] << ", max " << (*stats)[2] << "\n";
      out.unsetf(std::ios::floatfield);
    }
  }
  if (options.output == OutputFormat::Table) out << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

analysis::LatencyConfig latency_config(const EngineConfig& config,
                                       const std::vector<std::size_t>& m_values) {
  analysis::LatencyConfig lc;
  lc.m_values = m_values;
  lc.durations = config.durations;
  lc.iteration_ticks = config.iteration_ticks;
  lc.tick_seconds = config.tick_seconds;
  lc.cells = config.population.cell_count;
  lc.cell = config.population.cell;
  lc.policy = config.segmentation;
  lc.antigens_per_iteration = config.simulation.antigens_per_iteration;
  lc.seed = config.seed;
  return lc;
}

analysis::LatencyResult cmd_bench(const EngineConfig& config, const BenchOptions& options,
                                  std::ostream& out) {
  config.validate();
  const analysis::LatencyConfig lc = latency_config(config, options.m_values);
  const analysis::LatencyResult r = analysis::latency_experiment(lc);
  const double la = static_cast<double>(lc.durations.analysis.lo) * to_double(lc.tick_seconds);

  std::vector<double> host_ms(r.points.size(), 0.0);
  if (options.wall_clock) {
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      EngineConfig ec = config;
      ec.simulation.iterations = r.points[i].m;
      std::ostringstream stream;
      cmd_simulate(ec, stream, dca::StreamFormat::JsonLines);
      std::istringstream in(stream.str());
      std::ostringstream sink;
      const auto t0 = std::chrono::steady_clock::now();
      ec.analysis = AnalysisMode::Offline;
      cmd_detect(ec, in, dca::StreamFormat::JsonLines, sink);
      const auto t1 = std::chrono::steady_clock::now();
      host_ms[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
  }

  if (options.output == OutputFormat::Json) {
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const auto& p = r.points[i];
      json row{{"m", p.m},
               {"offline_seconds", p.offline_seconds},
               {"model_seconds", r.model_slope() * double(p.m) + la},
               {"segment_latency_median", p.segment_latency_median},
               {"segments", p.segments},
               {"lifespans", p.lifespans}};
      if (options.wall_clock) row["host_ms"] = host_ms[i];
      out << row.dump() << '\n';
    }
    if (r.points.size() >= 2) {
      out << json{{"fit", {{"slope", r.fit.slope}, {"intercept", r.fit.intercept}, {"r2", r.fit.r2}}},
                  {"mean_c", r.mean_c},
                  {"mean_mbar", r.mean_mbar},
                  {"model_slope", r.model_slope()}}
                 .dump()
          << '\n';
    }
    return r;
  }

  out << std::setw(8) << "m" << std::setw(14) << "offline_s" << std::setw(14) << "model_s"
      << std::setw(14) << "segment_s" << std::setw(10) << "segments";
  if (options.wall_clock) out << std::setw(12) << "host_ms";
  out << '\n';
  out << std::fixed << std::setprecision(2);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const auto& p = r.points[i];
    out << std::setw(8) << p.m << std::setw(14) << p.offline_seconds << std::setw(14)
        << r.model_slope() * double(p.m) + la << std::setw(14) << p.segment_latency_median
        << std::setw(10) << p.segments;
    if (options.wall_clock) out << std::setw(12) << host_ms[i];
    out << '\n';
  }
  if (r.points.size() >= 2) {
    out << std::setprecision(4) << "fit: offline = " << r.fit.slope << " * m + " << r.fit.intercept
        << " (R^2 " << r.fit.r2 << "); c/mbar = " << r.model_slope() << '\n';
  }
  out.unsetf(std::ios::floatfield);
  return r;
}

std::vector<dc::TimedTrace> cmd_record(const EngineConfig& config, std::istream& in,
                                       dca::StreamFormat format, std::ostream& out,
                                       instrument::TimingMode mode) {
  config.validate();
  instrument::RecorderConfig rc;
  rc.durations = config.durations;
  rc.mode = mode;
  rc.iteration_ticks = config.iteration_ticks;
  rc.tick_seconds = config.tick_seconds;
  rc.seed = config.seed;
  dca::Population population(population_config(config));
  instrument::PopulationRecorder recorder(config.population.cell_count, rc);
  dca::BatchReader reader(in, format);
  while (auto batch = reader.next()) population.step(*batch, &recorder);
  std::vector<dc::TimedTrace> traces;
  for (std::size_t i = 0; i < recorder.size(); ++i) traces.push_back(recorder.cell(i).trace());
  dc::write_traces(out, traces);
  return traces;
}

std::pair<std::string, Rational> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw ConfigError("expected name=value, got '" + text + "'");
  }
  const std::string name = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  const auto slash = value.find('/');
  try {
    if (slash == std::string::npos) return {name, parse_decimal(value)};
    std::size_t used_p = 0, used_q = 0;
    const std::string ps = value.substr(0, slash), qs = value.substr(slash + 1);
    const std::int64_t p = std::stoll(ps, &used_p);
    const std::int64_t q = std::stoll(qs, &used_q);
    if (used_p != ps.size() || used_q != qs.size() || q == 0) throw std::invalid_argument(value);
    return {name, Rational(p, q)};
  } catch (const std::logic_error&) {
    throw ConfigError("malformed value in '" + text + "'");
  }
}

}  // namespace dcmon::tools
