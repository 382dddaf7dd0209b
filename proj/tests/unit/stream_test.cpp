#include <gtest/gtest.h>

#include <sstream>

#include "dcmon/dca/simulate.hpp"
#include "dcmon/dca/stream_io.hpp"
#include "dcmon/error.hpp"

namespace dcmon::dca {
namespace {

std::vector<DataInstance> read_all(const std::string& text, StreamFormat f) {
  std::istringstream in(text);
  StreamReader r(in, f);
  std::vector<DataInstance> out;
  while (auto d = r.next()) out.push_back(*d);
  return out;
}

TEST(StreamFormat, FromExtension) {
  EXPECT_EQ(format_for_path("x.csv"), StreamFormat::Csv);
  EXPECT_EQ(format_for_path("x.jsonl"), StreamFormat::JsonLines);
  EXPECT_EQ(format_for_path("-"), StreamFormat::JsonLines);
}

TEST(StreamReader, JsonLines) {
  const auto v = read_all(R"({"stream": "dcmon"}
{"t": 1.0, "kind": "signal", "signal": [0.5, 1, 3]}

# comment
{"t": 1.5, "kind": "antigen", "type": "scan", "id": 17}
)",
                          StreamFormat::JsonLines);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(classify(v[0]), DataKind::Signal);
  EXPECT_EQ(*v[0].signal, (std::vector<double>{0.5, 1, 3}));
  EXPECT_EQ(v[1].antigen->type, "scan");
  EXPECT_EQ(v[1].antigen->id, 17u);
  EXPECT_EQ(v[1].timestamp, 1.5);
}

TEST(StreamReader, Csv) {
  const auto v = read_all("t,kind,values\n2,signal,1,2,3\n2.5,antigen,normal,4\n",
                          StreamFormat::Csv);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(*v[0].signal, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(v[1].antigen->type, "normal");
  EXPECT_EQ(v[1].antigen->id, 4u);
}

TEST(StreamReader, ErrorsNameTheRecord) {
  const std::string bad = R"({"t": 1, "kind": "signal", "signal": [1, 1, 1]}
{"t": 2, "kind": "bogus"}
)";
  try {
    read_all(bad, StreamFormat::JsonLines);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("record 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_all("{oops\n", StreamFormat::JsonLines), InputError);
  EXPECT_THROW(read_all(R"({"t": 1, "kind": "signal", "signal": [-1]})", StreamFormat::JsonLines),
               InputError);
  EXPECT_THROW(read_all("1,signal,x\n", StreamFormat::Csv), InputError);
  EXPECT_THROW(read_all("1,antigen\n", StreamFormat::Csv), InputError);
}

TEST(BatchReader, GroupsAntigensWithThePrecedingSignal) {
  std::istringstream in(R"({"t": 0, "kind": "antigen", "type": "a", "id": 0}
{"t": 1, "kind": "signal", "signal": [1, 1, 1]}
{"t": 1, "kind": "antigen", "type": "a", "id": 1}
{"t": 1, "kind": "antigen", "type": "b", "id": 2}
{"t": 2, "kind": "signal", "signal": [0, 0, 0]}
{"t": 3, "kind": "signal", "signal": [0, 0, 1]}
{"t": 3, "kind": "antigen", "type": "c", "id": 3}
)");
  const auto batches = read_batches(in, StreamFormat::JsonLines);
  ASSERT_EQ(batches.size(), 3u);
  EXPECT_EQ(batches[0].antigens.size(), 3u);
  EXPECT_EQ(batches[0].antigens[0].antigen->id, 0u);
  EXPECT_TRUE(batches[1].antigens.empty());
  EXPECT_EQ(batches[2].antigens.size(), 1u);
}

TEST(BatchReader, EmptyAndAntigenOnlyInput) {
  std::istringstream empty("");
  EXPECT_TRUE(read_batches(empty, StreamFormat::JsonLines).empty());
  std::istringstream orphans(R"({"t": 0, "kind": "antigen", "type": "a", "id": 0})");
  EXPECT_THROW(read_batches(orphans, StreamFormat::JsonLines), InputError);
}

TEST(Stream, WriteReadRoundTrip) {
  SimulationConfig sim;
  sim.iterations = 20;
  const Simulation s = simulate(sim);
  for (auto format : {StreamFormat::JsonLines, StreamFormat::Csv}) {
    std::ostringstream out;
    write_records(out, s.records, format);
    const auto back = read_all(out.str(), format);
    ASSERT_EQ(back.size(), s.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      EXPECT_EQ(back[i].timestamp, s.records[i].timestamp);
      EXPECT_EQ(back[i].signal, s.records[i].signal);
      if (back[i].antigen) {
        EXPECT_EQ(back[i].antigen->type, s.records[i].antigen->type);
        EXPECT_EQ(back[i].antigen->id, s.records[i].antigen->id);
      }
    }
  }
}

TEST(Simulate, IsByteIdenticalUnderAFixedSeed) {
  SimulationConfig sim;
  sim.iterations = 50;
  std::ostringstream a, b, c;
  write_records(a, simulate(sim).records, StreamFormat::JsonLines);
  write_records(b, simulate(sim).records, StreamFormat::JsonLines);
  sim.seed = 8;
  write_records(c, simulate(sim).records, StreamFormat::JsonLines);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(Simulate, ZeroLengthIsHeaderOnly) {
  SimulationConfig sim;
  sim.iterations = 0;
  const Simulation s = simulate(sim);
  EXPECT_TRUE(s.records.empty());
  std::ostringstream out;
  write_records(out, s.records, StreamFormat::JsonLines);
  EXPECT_FALSE(out.str().empty());
  EXPECT_TRUE(read_all(out.str(), StreamFormat::JsonLines).empty());
}

TEST(Simulate, NoAnomalyMeansBenignLabels) {
  SimulationConfig sim;
  sim.anomaly_fraction = 0;
  const Simulation s = simulate(sim);
  ASSERT_FALSE(s.labels.empty());
  for (const auto& l : s.labels) {
    EXPECT_FALSE(l.anomalous);
    EXPECT_EQ(l.type, sim.normal_type);
  }
}

TEST(Simulate, WindowCarriesTheAnomalousType) {
  SimulationConfig sim;
  const Simulation s = simulate(sim);
  EXPECT_LT(s.window_begin, s.window_end);
  EXPECT_EQ(s.window_end - s.window_begin, 150u);
  std::size_t anomalous = 0;
  for (const auto& l : s.labels) {
    if (l.anomalous) {
      ++anomalous;
      EXPECT_EQ(l.type, sim.anomalous_type);
    }
  }
  EXPECT_GT(anomalous, 0u);
  const auto batches = to_batches(s.records);
  EXPECT_EQ(batches.size(), sim.iterations);
  for (const auto& b : batches) EXPECT_EQ(b.antigens.size(), sim.antigens_per_iteration);
}

TEST(Simulate, ConfigValidation) {
  SimulationConfig sim;
  sim.anomaly_fraction = 1.5;
  EXPECT_THROW(sim.validate(), ConfigError);
  sim = SimulationConfig{};
  sim.normal_type = sim.anomalous_type;
  EXPECT_THROW(sim.validate(), ConfigError);
}

}  // namespace
}  // namespace dcmon::dca
