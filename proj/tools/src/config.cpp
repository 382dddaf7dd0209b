#include "dcmon/tools/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "dcmon/error.hpp"
#include "json.hpp"

namespace dcmon::tools {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config key '" + path + "': " + what);
}

void only_keys(const json& j, const std::string& path, std::set<std::string> allowed) {
  if (!j.is_object()) fail(path.empty() ? "(root)" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

template <class T>
void read(const json& j, const std::string& key, const std::string& path, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(path + key, "wrong type");
  }
}

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(path, "expected an integer or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s);
    const std::int64_t p = std::stoll(s.substr(0, slash));
    const std::int64_t q = std::stoll(s.substr(slash + 1));
    if (q == 0) fail(path, "zero denominator");
    return Rational(p, q);
  } catch (const std::logic_error&) {
    fail(path, "malformed rational '" + s + "'");
  } catch (const Error&) {
    fail(path, "malformed rational '" + s + "'");
  }
}

json duration_json(const instrument::DurationModel& m) {
  if (m.deterministic()) return m.lo;
  return json::array({m.lo, m.hi});
}

instrument::DurationModel parse_duration(const json& j, const std::string& path) {
  if (j.is_number_integer()) return instrument::DurationModel::fixed(j.get<dc::Tick>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return instrument::DurationModel::uniform(j[0].get<dc::Tick>(), j[1].get<dc::Tick>());
  }
  fail(path, "expected ticks or [lo, hi]");
}

}  // namespace

void EngineConfig::validate() const {
  population.validate();
  segmentation.validate();
  durations.validate();
  simulation.validate();
  if (threshold < 0.0 || threshold > 1.0) throw ConfigError("threshold must lie in [0, 1]");
  if (iteration_ticks < 1) throw ConfigError("iteration_ticks must be >= 1");
  if (tick_seconds <= 0) throw ConfigError("tick_seconds must be positive");
}

EngineConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  EngineConfig c;
  only_keys(root, "", {"seed", "population", "cell", "analysis", "durations", "simulation",
                       "input", "output"});
  read(root, "seed", "", c.seed);
  c.population.seed = c.seed;
  c.simulation.seed = c.seed;

  if (root.contains("population")) {
    const json& p = root["population"];
    only_keys(p, "population", {"cells", "threads", "antigen_policy", "iteration_seconds"});
    read(p, "cells", "population.", c.population.cell_count);
    read(p, "threads", "population.", c.population.threads);
    read(p, "iteration_seconds", "population.", c.population.iteration_seconds);
    std::string policy = "round_robin";
    read(p, "antigen_policy", "population.", policy);
    if (policy == "round_robin") {
      c.population.policy = dca::AntigenPolicy::RoundRobin;
    } else if (policy == "random") {
      c.population.policy = dca::AntigenPolicy::Random;
    } else {
      fail("population.antigen_policy", "expected \"round_robin\" or \"random\"");
    }
  }

  if (root.contains("cell")) {
    const json& j = root["cell"];
    only_keys(j, "cell", {"csm_weights", "context_weights", "threshold", "context_cutoff"});
    auto& cell = c.population.cell;
    read(j, "csm_weights", "cell.", cell.csm_weights);
    read(j, "context_weights", "cell.", cell.context_weights);
    read(j, "context_cutoff", "cell.", cell.context_cutoff);
    if (j.contains("threshold")) {
      std::vector<double> range;
      read(j, "threshold", "cell.", range);
      if (range.size() != 2) fail("cell.threshold", "expected [lo, hi]");
      cell.threshold_lo = range[0];
      cell.threshold_hi = range[1];
    }
  }

  if (root.contains("analysis")) {
    const json& j = root["analysis"];
    only_keys(j, "analysis", {"mode", "threshold", "segmentation"});
    std::string mode = "offline";
    read(j, "mode", "analysis.", mode);
    if (mode == "offline") {
      c.analysis = AnalysisMode::Offline;
    } else if (mode == "segmented") {
      c.analysis = AnalysisMode::Segmented;
    } else {
      fail("analysis.mode", "expected \"offline\" or \"segmented\"");
    }
    read(j, "threshold", "analysis.", c.threshold);
    if (j.contains("segmentation")) {
      const json& s = j["segmentation"];
      only_keys(s, "analysis.segmentation", {"by", "count", "period"});
      std::string by = "count";
      read(s, "by", "analysis.segmentation.", by);
      read(s, "count", "analysis.segmentation.", c.segmentation.count);
      read(s, "period", "analysis.segmentation.", c.segmentation.period);
      if (by == "count") {
        c.segmentation.kind = analysis::SegmentationPolicy::Kind::ByCount;
      } else if (by == "time") {
        c.segmentation.kind = analysis::SegmentationPolicy::Kind::ByTime;
      } else {
        fail("analysis.segmentation.by", "expected \"count\" or \"time\"");
      }
    }
  }

  if (root.contains("durations")) {
    const json& j = root["durations"];
    only_keys(j, "durations",
              {"l1", "l2", "l3", "l4", "l5", "la", "iteration_ticks", "tick_seconds"});
    for (std::size_t i = 0; i < instrument::kEventCount; ++i) {
      const std::string key = "l" + std::to_string(i + 1);
      if (j.contains(key)) c.durations.events[i] = parse_duration(j[key], "durations." + key);
    }
    if (j.contains("la")) c.durations.analysis = parse_duration(j["la"], "durations.la");
    read(j, "iteration_ticks", "durations.", c.iteration_ticks);
    if (j.contains("tick_seconds")) {
      c.tick_seconds = parse_rational(j["tick_seconds"], "durations.tick_seconds");
    }
  }

  if (root.contains("simulation")) {
    const json& j = root["simulation"];
    only_keys(j, "simulation", {"iterations", "antigens_per_iteration", "anomaly_fraction",
                                "anomalous_share", "normal_type", "anomalous_type"});
    auto& s = c.simulation;
    read(j, "iterations", "simulation.", s.iterations);
    read(j, "antigens_per_iteration", "simulation.", s.antigens_per_iteration);
    read(j, "anomaly_fraction", "simulation.", s.anomaly_fraction);
    read(j, "anomalous_share", "simulation.", s.anomalous_share);
    read(j, "normal_type", "simulation.", s.normal_type);
    read(j, "anomalous_type", "simulation.", s.anomalous_type);
  }
  c.simulation.iteration_seconds = c.population.iteration_seconds;

  if (root.contains("input") && !root["input"].is_null()) {
    std::string path;
    read(root, "input", "", path);
    c.input = path;
  }
  if (root.contains("output") && !root["output"].is_null()) {
    std::string path;
    read(root, "output", "", path);
    c.output = path;
  }
  c.validate();
  return c;
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const EngineConfig& c) {
  json root;
  root["seed"] = c.seed;
  root["population"] = {
      {"cells", c.population.cell_count},
      {"threads", c.population.threads},
      {"antigen_policy",
       c.population.policy == dca::AntigenPolicy::RoundRobin ? "round_robin" : "random"},
      {"iteration_seconds", c.population.iteration_seconds}};
  const auto& cell = c.population.cell;
  root["cell"] = {{"csm_weights", cell.csm_weights},
                  {"context_weights", cell.context_weights},
                  {"threshold", {cell.threshold_lo, cell.threshold_hi}},
                  {"context_cutoff", cell.context_cutoff}};
  root["analysis"] = {
      {"mode", c.analysis == AnalysisMode::Offline ? "offline" : "segmented"},
      {"threshold", c.threshold},
      {"segmentation",
       {{"by", c.segmentation.kind == analysis::SegmentationPolicy::Kind::ByCount ? "count"
                                                                                  : "time"},
        {"count", c.segmentation.count},
        {"period", c.segmentation.period}}}};
  json d;
  for (std::size_t i = 0; i < instrument::kEventCount; ++i) {
    d["l" + std::to_string(i + 1)] = duration_json(c.durations.events[i]);
  }
  d["la"] = duration_json(c.durations.analysis);
  d["iteration_ticks"] = c.iteration_ticks;
  d["tick_seconds"] = rational_text(c.tick_seconds);
  root["durations"] = d;
  const auto& s = c.simulation;
  root["simulation"] = {{"iterations", s.iterations},
                        {"antigens_per_iteration", s.antigens_per_iteration},
                        {"anomaly_fraction", s.anomaly_fraction},
                        {"anomalous_share", s.anomalous_share},
                        {"normal_type", s.normal_type},
                        {"anomalous_type", s.anomalous_type}};
  root["input"] = c.input ? json(*c.input) : json(nullptr);
  root["output"] = c.output ? json(*c.output) : json(nullptr);
  return root.dump(2) + "\n";
}

}  // namespace dcmon::tools
