#include "dcmon/dca/population.hpp"

#include <gtest/gtest.h>

#include "dcmon/dca/simulate.hpp"
#include "dcmon/error.hpp"

namespace dcmon::dca {
namespace {

bool same(const Presentation& a, const Presentation& b) {
  if (a.cell != b.cell || a.time != b.time || a.signals != b.signals ||
      a.antigens != b.antigens || a.items.size() != b.items.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (a.items[i].type != b.items[i].type || a.items[i].id != b.items[i].id ||
        a.items[i].mature != b.items[i].mature) {
      return false;
    }
  }
  return true;
}

bool same(const PresentationLog& a, const PresentationLog& b) {
  if (a.presentations.size() != b.presentations.size()) return false;
  for (std::size_t i = 0; i < a.presentations.size(); ++i) {
    if (!same(a.presentations[i], b.presentations[i])) return false;
  }
  return true;
}

std::vector<IterationBatch> simulated(std::size_t iterations, std::uint64_t seed) {
  SimulationConfig sim;
  sim.iterations = iterations;
  sim.seed = seed;
  return to_batches(simulate(sim).records);
}

TEST(PopulationConfig, Validation) {
  PopulationConfig c;
  EXPECT_NO_THROW(c.validate());
  c.cell_count = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PopulationConfig{};
  c.iteration_seconds = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = PopulationConfig{};
  c.cell.threshold_hi = 1;
  EXPECT_THROW(Population{c}, ConfigError);
}

TEST(Population, SingleStepMigration) {
  PopulationConfig c;
  c.cell_count = 1;
  c.cell.threshold_lo = c.cell.threshold_hi = 8;
  Population pop(c);
  IterationBatch batch{DataInstance::make_signal(0, {0, 4, 2}),
                       {DataInstance::make_antigen(0, "a", 1)}};
  const auto out = pop.step(batch);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].items.size(), 1u);
  EXPECT_EQ(out[0].signals, 1u);
  EXPECT_EQ(out[0].antigens, 1u);
}

TEST(Population, SignalOnlyBatches) {
  PopulationConfig c;
  c.cell_count = 3;
  Population pop(c);
  for (int i = 0; i < 5; ++i) pop.step({DataInstance::make_signal(i, {0, 1, 1}), {}});
  for (const auto& cell : pop.cells()) {
    EXPECT_EQ(cell.antigens_sampled(), 0u);
    EXPECT_EQ(cell.signals_processed(), 5u);
  }
}

TEST(Population, RejectsMalformedBatches) {
  Population pop(PopulationConfig{});
  EXPECT_THROW(pop.step({DataInstance::make_antigen(0, "a", 1), {}}), InputError);
  EXPECT_THROW(pop.step({DataInstance::make_signal(0, {1, 1, 1}),
                         {DataInstance::make_signal(0, {1, 1, 1})}}),
               InputError);
}

TEST(Population, RoundRobinAssignment) {
  PopulationConfig c;
  c.cell_count = 3;
  Population pop(c);
  EXPECT_EQ(pop.assign(4), (std::vector<std::size_t>{0, 1, 2, 0}));
  EXPECT_EQ(pop.assign(2), (std::vector<std::size_t>{1, 2}));
}

TEST(Population, EmptyStreamGivesEmptyLog) {
  Population pop(PopulationConfig{});
  const PresentationLog log = pop.run(std::span<const IterationBatch>{});
  EXPECT_TRUE(log.presentations.empty());
  EXPECT_EQ(log.iterations, 0u);
}

TEST(Population, LifespansPerCellFollowSignalsPerLifespan) {
  PopulationConfig c;
  c.cell_count = 4;
  c.cell.threshold_lo = c.cell.threshold_hi = 10;
  Population pop(c);
  std::vector<IterationBatch> batches;
  for (int i = 0; i < 100; ++i) batches.push_back({DataInstance::make_signal(i, {0, 1, 0}), {}});
  const PresentationLog log = pop.run(batches);
  EXPECT_EQ(log.presentations.size(), 40u);
  for (const auto& p : log.presentations) EXPECT_EQ(p.signals, 10u);
}

TEST(Population, ReplayIsDeterministicAcrossThreadCounts) {
  const auto batches = simulated(300, 5);
  PopulationConfig c;
  c.seed = 17;
  const PresentationLog a = Population(c).run(batches);
  const PresentationLog b = Population(c).run(batches);
  c.threads = 4;
  const PresentationLog d = Population(c).run(batches);
  EXPECT_FALSE(a.presentations.empty());
  EXPECT_TRUE(same(a, b));
  EXPECT_TRUE(same(a, d));
  for (std::size_t i = 1; i < a.presentations.size(); ++i) {
    EXPECT_LE(a.presentations[i - 1].time, a.presentations[i].time);
  }
}

TEST(Population, DistinctSeedsGiveDistinctLogs) {
  const auto batches = simulated(200, 5);
  PopulationConfig c;
  c.seed = 0;
  const PresentationLog base = Population(c).run(batches);
  int distinct = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    c.seed = seed;
    if (!same(base, Population(c).run(batches))) ++distinct;
  }
  EXPECT_GE(distinct, 9);
}

TEST(Population, EqualsCellsRunInIsolation) {
  const auto batches = simulated(200, 8);
  PopulationConfig c;
  c.cell_count = 5;
  c.seed = 3;
  const PresentationLog log = Population(c).run(batches);

  // Replay each cell alone with the round-robin share it would receive.
  std::vector<std::vector<Presentation>> per_cell(c.cell_count);
  std::vector<Rng> rngs;
  std::vector<Cell> cells;
  rngs.reserve(c.cell_count);
  for (std::size_t i = 0; i < c.cell_count; ++i) {
    rngs.push_back(derive_rng(c.seed, i));
    cells.emplace_back(c.cell, rngs.back());
  }
  std::size_t next = 0;
  for (const auto& batch : batches) {
    std::vector<std::vector<DataInstance>> share(c.cell_count);
    for (const auto& a : batch.antigens) share[next++ % c.cell_count].push_back(a);
    for (std::size_t i = 0; i < c.cell_count; ++i) {
      if (auto p = run_iteration(cells[i], batch.signal, share[i], rngs[i], nullptr, i)) {
        per_cell[i].push_back(*p);
      }
    }
  }
  std::vector<std::size_t> seen(c.cell_count, 0);
  for (const auto& p : log.presentations) {
    ASSERT_LT(seen[p.cell], per_cell[p.cell].size());
    EXPECT_TRUE(same(p, per_cell[p.cell][seen[p.cell]++]));
  }
  for (std::size_t i = 0; i < c.cell_count; ++i) EXPECT_EQ(seen[i], per_cell[i].size());
}

TEST(Population, RandomPolicyIsSeeded) {
  const auto batches = simulated(100, 2);
  PopulationConfig c;
  c.policy = AntigenPolicy::Random;
  EXPECT_TRUE(same(Population(c).run(batches), Population(c).run(batches)));
}

struct CountingSink : CellEventSink {
  std::vector<std::vector<CellEvent>> events;
  explicit CountingSink(std::size_t n) : events(n) {}
  void on_event(std::size_t cell, CellEvent e) override { events[cell].push_back(e); }
};

TEST(Population, EventOrderPerIteration) {
  PopulationConfig c;
  c.cell_count = 1;
  c.cell.threshold_lo = c.cell.threshold_hi = 2;
  Population pop(c);
  CountingSink sink(1);
  pop.step({DataInstance::make_signal(0, {0, 1, 0}), {DataInstance::make_antigen(0, "a", 1)}},
           &sink);
  pop.step({DataInstance::make_signal(1, {0, 1, 0}), {}}, &sink);
  using E = CellEvent;
  EXPECT_EQ(sink.events[0],
            (std::vector<E>{E::BeginIteration, E::Process, E::Transform, E::Process, E::Sample,
                            E::Correlate, E::EndIteration, E::BeginIteration, E::Process,
                            E::Transform, E::Correlate, E::Present, E::EndIteration}));
}

}  // namespace
}  // namespace dcmon::dca
