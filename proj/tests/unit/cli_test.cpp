#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "dcmon/dc/spec.hpp"
#include "dcmon/dc/trace_io.hpp"
#include "dcmon/error.hpp"
#include "dcmon/tools/commands.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace dcmon::tools {
namespace {

namespace fs = std::filesystem;

struct ProcessResult {
  int status = -1;
  std::string out;
};

ProcessResult run(const std::string& args) {
  const std::string cmd = std::string(DCMON_EXE) + " " + args + " 2>/dev/null";
  ProcessResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dcmon_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Final report rows of detect --json output, keyed by type.
std::map<std::string, nlohmann::json> final_rows(const std::string& out) {
  std::map<std::string, nlohmann::json> rows;
  std::istringstream in(out);
  std::string line;
  bool final = false;
  bool segmented = out.find("\"segment_closed\"") != std::string::npos;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("event")) {
      final = j["event"] == "final";
      continue;
    }
    if (!segmented || final) rows[j["type"].get<std::string>()] = j;
  }
  return rows;
}

TEST(Config, DefaultsRoundTrip) {
  const EngineConfig c = parse_config(to_json(EngineConfig{}));
  EXPECT_EQ(to_json(c), to_json(EngineConfig{}));
}

TEST(Config, OverridesAndDurations) {
  const EngineConfig c = parse_config(R"({
    "seed": 9,
    "population": {"cells": 4, "antigen_policy": "random"},
    "cell": {"threshold": [5, 6]},
    "analysis": {"mode": "segmented", "segmentation": {"by": "time", "period": 2.5}},
    "durations": {"l1": 2, "l3": [1, 4], "tick_seconds": "1/4"}
  })");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.population.cell_count, 4u);
  EXPECT_EQ(c.population.policy, dca::AntigenPolicy::Random);
  EXPECT_EQ(c.population.cell.threshold_hi, 6.0);
  EXPECT_EQ(c.analysis, AnalysisMode::Segmented);
  EXPECT_EQ(c.segmentation.kind, analysis::SegmentationPolicy::Kind::ByTime);
  EXPECT_EQ(c.segmentation.period, 2.5);
  EXPECT_EQ(c.durations.events[0].lo, 2);
  EXPECT_FALSE(c.durations.events[2].deterministic());
  EXPECT_EQ(c.tick_seconds, Rational(1, 4));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config(R"({"sed": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"cell": {"weights": [1]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"population": {"cells": "ten"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"population": {"cells": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"analysis": {"mode": "online"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"durations": {"l2": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"durations": {"tick_seconds": "1/0"}})"), ConfigError);
  EXPECT_THROW(parse_config("not json"), ConfigError);
  try {
    parse_config(R"({"analysis": {"segmentation": {"size": 3}}})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("analysis.segmentation.size"), std::string::npos);
  }
}

TEST(Assignment, Parsing) {
  EXPECT_EQ(parse_assignment("b=11").second, Rational(11));
  EXPECT_EQ(parse_assignment("l1=0.25").second, Rational(1, 4));
  EXPECT_EQ(parse_assignment("r=3/4"), (std::pair<std::string, Rational>{"r", Rational(3, 4)}));
  EXPECT_THROW(parse_assignment("b"), ConfigError);
  EXPECT_THROW(parse_assignment("b=x"), ConfigError);
  EXPECT_THROW(parse_assignment("b=1/0"), ConfigError);
}

TEST(Detect, OfflineAndSegmentedAgree) {
  EngineConfig c;
  c.simulation.iterations = 200;
  std::ostringstream stream;
  cmd_simulate(c, stream, dca::StreamFormat::JsonLines);
  std::istringstream in1(stream.str()), in2(stream.str());
  std::ostringstream out1, out2;
  const DetectResult offline = cmd_detect(c, in1, dca::StreamFormat::JsonLines, out1);
  c.analysis = AnalysisMode::Segmented;
  c.segmentation = analysis::SegmentationPolicy::by_count(5);
  const DetectResult segmented = cmd_detect(c, in2, dca::StreamFormat::JsonLines, out2);
  EXPECT_EQ(offline.report.counts, segmented.report.counts);
  EXPECT_GT(segmented.segments, 1u);
  EXPECT_EQ(final_rows(out1.str()), final_rows(out2.str()));
}

TEST(Detect, PlantedAnomalyIsFlagged) {
  EngineConfig c;
  std::ostringstream stream;
  cmd_simulate(c, stream, dca::StreamFormat::JsonLines);
  std::istringstream in(stream.str());
  std::ostringstream out;
  const DetectResult r = cmd_detect(c, in, dca::StreamFormat::JsonLines, out);
  EXPECT_TRUE(r.report.anomalous("scan"));
  EXPECT_FALSE(r.report.anomalous("normal"));
}

TEST(Detect, EmptyInput) {
  std::istringstream in("");
  std::ostringstream out;
  const DetectResult r = cmd_detect(EngineConfig{}, in, dca::StreamFormat::JsonLines, out);
  EXPECT_TRUE(r.report.counts.empty());
  EXPECT_EQ(out.str(), "");
}

TEST(Monitor, GoldenTraceAndInterval) {
  std::ostringstream out;
  EXPECT_EQ(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), {}, out),
            kExitOk);
  MonitorOptions o;
  o.formulas = {"F2"};
  o.interval = dc::Interval{5, 6};
  EXPECT_EQ(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), o, out), kExitOk);
  o.interval = dc::Interval{0, 6};
  EXPECT_EQ(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), o, out),
            kExitCheckFailed);
  o.interval = dc::Interval{0, 7};
  EXPECT_THROW(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), o, out),
               RangeError);
  MonitorOptions bad;
  bad.overrides = {{"nosuch", Rational(1)}};
  EXPECT_THROW(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), bad, out),
               ConfigError);
}

TEST(Monitor, OverrideBreaksDesignDecision) {
  MonitorOptions o;
  o.formulas = {"Des1"};
  o.overrides = {{"l4", Rational(4)}};  // 1 + 1 + 4 > r = 5
  std::ostringstream out;
  EXPECT_EQ(cmd_monitor(dc::bundled_spec_text(), testing::unit_lifespan_trace(), o, out),
            kExitCheckFailed);
  EXPECT_NE(out.str().find("FAIL Des1"), std::string::npos);
  EXPECT_NE(out.str().find("violated on"), std::string::npos);
}

TEST(RealtimeCommand, ModesAndEmptyRun) {
  std::ostringstream out;
  RealtimeOptions o;
  o.runs = 30;
  EXPECT_EQ(cmd_realtime(o, out), kExitOk);
  o.violate = true;
  o.runs = 10;
  EXPECT_EQ(cmd_realtime(o, out), kExitOk);
  o.violate = false;
  o.runs = 0;
  o.output = OutputFormat::Json;
  std::ostringstream json_out;
  EXPECT_EQ(cmd_realtime(o, json_out), kExitOk);
  const auto j = nlohmann::json::parse(json_out.str());
  EXPECT_EQ(j["req_holds"], 0);
  EXPECT_FALSE(j.contains("slack_seconds"));
}

TEST(Bench, EmptyAndDoubling) {
  std::ostringstream out;
  BenchOptions o;
  o.m_values = {};
  EXPECT_TRUE(cmd_bench(EngineConfig{}, o, out).points.empty());
  o.m_values = {100, 200};
  const auto r = cmd_bench(EngineConfig{}, o, out);
  ASSERT_EQ(r.points.size(), 2u);
  const double la = 0.1;
  const double ratio = (r.points[1].offline_seconds - la) / (r.points[0].offline_seconds - la);
  EXPECT_NEAR(ratio, 2.0, 0.1);
}

TEST(Record, TracesPassTheBundledSpec) {
  EngineConfig c;
  c.population.cell_count = 3;
  c.population.cell.threshold_lo = c.population.cell.threshold_hi = 4;
  c.simulation.iterations = 30;
  c.simulation.antigens_per_iteration = 0;
  c.tick_seconds = Rational(1);
  std::ostringstream stream;
  cmd_simulate(c, stream, dca::StreamFormat::JsonLines);
  std::istringstream in(stream.str());
  std::ostringstream out;
  const auto traces = cmd_record(c, in, dca::StreamFormat::JsonLines, out,
                                 instrument::TimingMode::EventTime);
  ASSERT_EQ(traces.size(), 3u);
  for (int cell = 0; cell < 3; ++cell) {
    EXPECT_EQ(dc::read_trace_text(out.str(), cell), traces[std::size_t(cell)]);
  }
}

TEST(Executable, ConfigDefaultsAndUsageErrors) {
  const ProcessResult defaults = run("config --print-defaults");
  EXPECT_EQ(defaults.status, 0);
  EXPECT_NO_THROW(parse_config(defaults.out));
  EXPECT_EQ(run("").status, kExitUsage);
  EXPECT_EQ(run("frobnicate").status, kExitUsage);
  EXPECT_EQ(run("detect --analysis sideways").status, kExitUsage);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Executable, SimulateIsReplayable) {
  TempDir dir;
  const std::string a = dir.file("a.jsonl"), b = dir.file("b.jsonl");
  EXPECT_EQ(run("simulate --seed 5 -o " + a).status, 0);
  EXPECT_EQ(run("simulate --seed 5 -o " + b).status, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  const std::string z = dir.file("z.jsonl");
  EXPECT_EQ(run("simulate --iterations 0 -o " + z).status, 0);
  const std::string header = slurp(z);
  EXPECT_EQ(std::count(header.begin(), header.end(), '\n'), 1);
  const std::string labels = dir.file("labels.jsonl");
  EXPECT_EQ(run("simulate --anomaly-fraction 0 -o " + dir.file("s.jsonl") + " --labels " + labels)
                .status,
            0);
  EXPECT_EQ(slurp(labels).find("\"anomalous\":true"), std::string::npos);
}

TEST(Executable, DetectPipeline) {
  TempDir dir;
  const std::string stream = dir.file("s.csv");
  ASSERT_EQ(run("simulate --iterations 150 -o " + stream).status, 0);
  const ProcessResult offline = run("detect --json -i " + stream);
  const ProcessResult segmented = run("detect --json --analysis segmented --by-count 5 -i " + stream);
  ASSERT_EQ(offline.status, 0);
  ASSERT_EQ(segmented.status, 0);
  EXPECT_EQ(final_rows(offline.out), final_rows(segmented.out));
  EXPECT_FALSE(final_rows(offline.out).empty());
  write(dir.file("empty.jsonl"), "");
  const ProcessResult empty = run("detect -i " + dir.file("empty.jsonl"));
  EXPECT_EQ(empty.status, 0);
  write(dir.file("bad.jsonl"), "{\"t\": 0, \"kind\": \"signal\", \"signal\": [1, 2, 3]}\n{\"t\": 1}\n");
  EXPECT_EQ(run("detect -i " + dir.file("bad.jsonl")).status, kExitUsage);
  write(dir.file("cfg.json"), "{\"population\": {\"cels\": 3}}");
  EXPECT_EQ(run("detect -c " + dir.file("cfg.json") + " -i " + stream).status, kExitUsage);
}

TEST(Executable, MonitorBundledSpec) {
  EXPECT_EQ(run("monitor").status, 0);
  const std::string spec = std::string(DCMON_SPECS_DIR) + "/single_cell.dcspec";
  const std::string trace = std::string(DCMON_SPECS_DIR) + "/unit_lifespan.jsonl";
  EXPECT_EQ(run("monitor -s " + spec + " -t " + trace).status, 0);
  EXPECT_EQ(run("monitor -f F2 --interval 5 6").status, 0);
  EXPECT_EQ(run("monitor -f F1 --interval 0 5").status, 0);
  EXPECT_EQ(run("monitor -f F2").status, kExitCheckFailed);
  EXPECT_EQ(run("monitor --set b=2 -f Offline").status, kExitCheckFailed);

  // E1 still active during E5 breaks the matured-phase encoding.
  TempDir dir;
  const dc::TimedTrace golden = dc::read_trace_text(slurp(trace));
  dc::TraceBuilder b(golden.schema());
  b.set(0, "I", 1).set(0, "E1", 1).set(1, "E1", 0).set(1, "E2", 1).set(2, "E2", 0);
  b.set(2, "E1", 1).set(3, "E1", 0).set(3, "E3", 1).set(4, "E3", 0).set(4, "E4", 1);
  b.set(5, "E4", 0).set(5, "I", 0).set(5, "M", 1).set(5, "E5", 1).set(5, "E1", 1);
  std::ostringstream out;
  dc::write_trace(out, b.build(6));
  write(dir.file("bad.jsonl"), out.str());
  EXPECT_EQ(run("monitor -t " + dir.file("bad.jsonl") + " -f F2 --interval 5 6").status,
            kExitCheckFailed);
  EXPECT_EQ(run("monitor -t " + dir.file("bad.jsonl")).status, kExitCheckFailed);
}

TEST(Executable, RealtimeAndBench) {
  const ProcessResult ok = run("realtime --runs 20 --json");
  EXPECT_EQ(ok.status, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["req_holds"], 20);
  const ProcessResult violate = run("realtime --violate des1 --runs 5");
  EXPECT_EQ(violate.status, 0);
  EXPECT_NE(violate.out.find("Req fails"), std::string::npos);
  const ProcessResult bench = run("bench --m 100,200 --json");
  EXPECT_EQ(bench.status, 0);
  EXPECT_NE(bench.out.find("\"fit\""), std::string::npos);
}

TEST(Executable, RecordThenMonitor) {
  TempDir dir;
  const std::string stream = dir.file("s.jsonl"), traces = dir.file("t.jsonl");
  write(dir.file("cfg.json"),
        R"({"population": {"cells": 2}, "cell": {"threshold": [3, 3]},
            "simulation": {"iterations": 12, "antigens_per_iteration": 2},
            "durations": {"tick_seconds": "1"}})");
  ASSERT_EQ(run("simulate -c " + dir.file("cfg.json") + " -o " + stream).status, 0);
  ASSERT_EQ(run("record -c " + dir.file("cfg.json") + " -i " + stream + " -o " + traces).status, 0);
  EXPECT_EQ(run("monitor -t " + traces + " --cell 1 -f StateI -f StateM -f Des1 -f Des2").status, 0);
}

}  // namespace
}  // namespace dcmon::tools
