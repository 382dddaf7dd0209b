#include "dcmon/dca/cell.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "dcmon/dca/population.hpp"
#include "dcmon/error.hpp"

namespace dcmon::dca {
namespace {

DataInstance sig(std::vector<double> v, double t = 0.0) {
  return DataInstance::make_signal(t, std::move(v));
}
DataInstance ag(const std::string& type, std::uint64_t id = 0, double t = 0.0) {
  return DataInstance::make_antigen(t, type, id);
}

CellConfig fixed_threshold(double theta) {
  CellConfig c;
  c.threshold_lo = c.threshold_hi = theta;
  return c;
}

TEST(Classify, ReadsTheKindTag) {
  EXPECT_EQ(classify(sig({1, 2, 3})), DataKind::Signal);
  EXPECT_EQ(classify(ag("scan")), DataKind::Antigen);
  DataInstance both = sig({1, 2, 3});
  both.antigen = Antigen{"scan", 1};
  EXPECT_THROW(classify(both), InputError);
  EXPECT_THROW(classify(DataInstance{}), InputError);
  EXPECT_THROW(classify(sig({1, -1, 0})), InputError);
  EXPECT_THROW(classify(sig({1, NAN, 0})), InputError);
  EXPECT_THROW(classify(ag("")), InputError);
}

TEST(CellConfig, Validation) {
  CellConfig c;
  EXPECT_NO_THROW(c.validate());
  c.threshold_lo = 70;
  EXPECT_THROW(c.validate(), ConfigError);
  c = CellConfig{};
  c.threshold_lo = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = CellConfig{};
  c.context_weights = {1, 2};
  EXPECT_THROW(c.validate(), ConfigError);
  c = CellConfig{};
  c.csm_weights.clear();
  c.context_weights.clear();
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Cell, TransformUsesDefaultWeights) {
  Rng rng(1);
  Cell cell(CellConfig{}, rng);
  const std::vector<double> s{0, 4, 2};
  cell.transform_signals(s, 0);
  EXPECT_DOUBLE_EQ(cell.csm(), 8.0);                  // 2*0 + 1*4 + 2*2
  EXPECT_DOUBLE_EQ(cell.context_accumulator(), -2.0);  // 2*0 + 1*4 - 3*2
  const std::vector<double> zero{0, 0, 0};
  cell.transform_signals(zero, 1);
  EXPECT_DOUBLE_EQ(cell.csm(), 8.0);
  EXPECT_DOUBLE_EQ(cell.context_accumulator(), -2.0);
  const std::vector<double> pamp{1, 0, 0};
  cell.transform_signals(pamp, 2);
  EXPECT_DOUBLE_EQ(cell.csm(), 10.0);
  EXPECT_DOUBLE_EQ(cell.context_accumulator(), 0.0);
  EXPECT_EQ(cell.signals_processed(), 3u);
  const std::vector<double> short_signal{1, 0};
  EXPECT_THROW(cell.transform_signals(short_signal, 3), InputError);
}

TEST(Cell, SamplingAppendsToStore) {
  Rng rng(1);
  Cell cell(CellConfig{}, rng);
  cell.sample_antigen(ag("normal", 1));
  cell.sample_antigen(ag("normal", 2));
  ASSERT_EQ(cell.antigen_store().size(), 2u);
  EXPECT_EQ(cell.antigen_store()[0].antigen.type, "normal");
  EXPECT_EQ(cell.antigen_store()[1].antigen.type, "normal");
  EXPECT_EQ(cell.antigens_sampled(), 2u);
  EXPECT_THROW(cell.sample_antigen(sig({1, 1, 1})), InputError);
  for (int i = 0; i < 48; ++i) cell.sample_antigen(ag("x", static_cast<std::uint64_t>(i)));
  EXPECT_EQ(cell.antigens_sampled(), 50u);
}

TEST(Cell, CorrelationCountsSignals) {
  Rng rng(1);
  Cell cell(fixed_threshold(1000), rng);
  cell.correlate();
  EXPECT_EQ(cell.correlations(), 1u);
  const std::vector<double> s{0, 1, 0};
  cell.transform_signals(s, 4.0);
  cell.sample_antigen(ag("a", 1, 3.5));
  cell.sample_antigen(ag("a", 2, 3.6));
  cell.correlate();
  cell.transform_signals(s, 5.0);
  cell.sample_antigen(ag("b", 3, 4.5));
  cell.correlate();
  EXPECT_EQ(cell.correlations(), 3u);
  ASSERT_EQ(cell.antigen_store().size(), 3u);
  EXPECT_EQ(cell.antigen_store()[0].correlated_at, 5.0);
  EXPECT_EQ(cell.antigen_store()[2].correlated_at, 5.0);
}

TEST(Cell, MigrationIsInclusiveAndTieIsSemi) {
  Rng rng(1);
  Cell cell(fixed_threshold(8), rng);
  const std::vector<double> s{0, 4, 1.99};
  cell.transform_signals(s, 0);
  EXPECT_FALSE(cell.maybe_migrate());
  EXPECT_EQ(cell.state(), CellState::Immature);

  Cell exact(fixed_threshold(5), rng);
  const std::vector<double> t{0, 3, 1};
  exact.transform_signals(t, 0);
  EXPECT_TRUE(exact.maybe_migrate());
  EXPECT_EQ(exact.state(), CellState::Matured);
  EXPECT_EQ(exact.context(), Context::Semi);  // k_acc = 0
  EXPECT_FALSE(exact.maybe_migrate());
  EXPECT_THROW(exact.transform_signals(t, 1), StateError);
  EXPECT_THROW(exact.sample_antigen(ag("a")), StateError);
  EXPECT_THROW(exact.correlate(), StateError);
}

TEST(Cell, PresentationMapsContextToEveryItem) {
  Rng rng(1);
  Cell cell(fixed_threshold(2), rng);
  for (const char* type : {"A", "A", "B"}) cell.sample_antigen(ag(type));
  const std::vector<double> s{1, 0, 0};
  cell.transform_signals(s, 1.5);
  ASSERT_TRUE(cell.maybe_migrate());
  EXPECT_EQ(cell.context(), Context::Full);
  const Presentation p = cell.present();
  ASSERT_EQ(p.items.size(), 3u);
  EXPECT_EQ(p.items[0].type, "A");
  EXPECT_EQ(p.items[2].type, "B");
  for (const auto& it : p.items) EXPECT_TRUE(it.mature);
  EXPECT_EQ(p.time, 1.5);
  EXPECT_THROW(cell.present(), StateError);
}

TEST(Cell, SemiPresentationWithEmptyStore) {
  Rng rng(1);
  Cell cell(fixed_threshold(2), rng);
  const std::vector<double> s{0, 0, 1};
  cell.transform_signals(s, 0);
  ASSERT_TRUE(cell.maybe_migrate());
  EXPECT_EQ(cell.context(), Context::Semi);
  const Presentation p = cell.present();
  EXPECT_TRUE(p.items.empty());
}

TEST(Cell, LifespanStats) {
  Rng rng(1);
  Cell cell(fixed_threshold(4), rng);
  const std::vector<double> s{0, 1, 0};
  std::uint64_t id = 0;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < (i == 0 ? 4 : 1); ++k) cell.sample_antigen(ag("a", id++));
    cell.transform_signals(s, i);
    cell.correlate();
    EXPECT_EQ(cell.maybe_migrate(), i == 3);
  }
  const Presentation p = cell.present();
  EXPECT_EQ(p.signals, 4u);
  EXPECT_EQ(p.antigens, 7u);
}

TEST(Cell, Reinitialise) {
  Rng rng(1);
  Cell cell(fixed_threshold(2), rng);
  EXPECT_THROW(cell.reinitialise(rng), StateError);
  cell.sample_antigen(ag("a"));
  const std::vector<double> s{1, 0, 0};
  cell.transform_signals(s, 0);
  ASSERT_TRUE(cell.maybe_migrate());
  EXPECT_THROW(cell.reinitialise(rng), StateError);
  cell.present();
  cell.reinitialise(rng);
  EXPECT_EQ(cell.state(), CellState::Immature);
  EXPECT_EQ(cell.csm(), 0.0);
  EXPECT_EQ(cell.context_accumulator(), 0.0);
  EXPECT_TRUE(cell.antigen_store().empty());
  EXPECT_EQ(cell.signals_processed(), 0u);
  EXPECT_EQ(cell.threshold(), 2.0);
  EXPECT_FALSE(cell.maybe_migrate());
}

TEST(Cell, ThresholdSequenceIsSeeded) {
  auto thresholds = [](std::uint64_t seed) {
    Rng rng = derive_rng(seed, 0);
    Cell cell(CellConfig{}, rng);
    std::vector<double> out{cell.threshold()};
    const std::vector<double> s{100, 0, 0};
    for (int i = 0; i < 5; ++i) {
      cell.transform_signals(s, i);
      cell.maybe_migrate();
      cell.present();
      cell.reinitialise(rng);
      out.push_back(cell.threshold());
    }
    return out;
  };
  const auto a = thresholds(9);
  EXPECT_EQ(a, thresholds(9));
  EXPECT_NE(a, thresholds(10));
  for (double x : a) {
    EXPECT_GE(x, 20.0);
    EXPECT_LE(x, 60.0);
  }
}

TEST(Cell, ThresholdRangeCreatesDiverseLifespans) {
  std::vector<double> lengths;
  const std::vector<double> s{0.5, 1, 3};
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = derive_rng(42, i);
    Cell cell(CellConfig{}, rng);
    int n = 0;
    do {
      cell.transform_signals(s, n++);
    } while (!cell.maybe_migrate());
    lengths.push_back(n);
  }
  double mean = 0;
  for (double x : lengths) mean += x;
  mean /= static_cast<double>(lengths.size());
  double var = 0;
  for (double x : lengths) var += (x - mean) * (x - mean);
  EXPECT_GT(var, 0.0);
}

TEST(Cell, StateMachineOnlyCyclesThroughMaturity) {
  Rng rng(3);
  Cell cell(CellConfig{}, rng);
  double last_csm = 0;
  CellState last = cell.state();
  const std::vector<double> s{0.3, 2, 1};
  for (int i = 0; i < 500; ++i) {
    auto p = run_iteration(cell, DataInstance::make_signal(i, s), {}, rng);
    const CellState now = cell.state();
    EXPECT_EQ(now, CellState::Immature);  // reinitialised within the iteration
    if (p) {
      last_csm = 0;
    } else {
      EXPECT_GE(cell.csm(), last_csm);
      last_csm = cell.csm();
    }
    last = now;
  }
  EXPECT_EQ(last, CellState::Immature);
}

}  // namespace
}  // namespace dcmon::dca
