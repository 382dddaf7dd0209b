#include <benchmark/benchmark.h>

#include "dcmon/analysis/segment.hpp"
#include "dcmon/dc/eval.hpp"
#include "dcmon/dc/parser.hpp"
#include "dcmon/dc/spec.hpp"
#include "dcmon/dca/simulate.hpp"
#include "dcmon/instrument/recorder.hpp"
#include "dcmon/monitor/monitor.hpp"

namespace {

using namespace dcmon;

/// Trace of one lifespan with `m` signals and wall-clock padding.
dc::TimedTrace lifespan_trace(std::size_t m) {
  instrument::RecorderConfig rc;
  rc.durations = instrument::EventDurations::fixed(2, 2, 1, 3, 4);
  rc.mode = instrument::TimingMode::WallClock;
  dca::CellConfig cell;
  cell.threshold_lo = cell.threshold_hi = double(m);
  std::vector<dca::IterationBatch> batches;
  for (std::size_t i = 0; i < m; ++i) {
    batches.push_back({dca::DataInstance::make_signal(double(i), {0, 1, 0}),
                       {dca::DataInstance::make_antigen(double(i), "a", i)}});
  }
  return instrument::record_cell(cell, batches, rc).trace;
}

void BM_EvalBoxReq(benchmark::State& state) {
  const dc::TimedTrace trace = lifespan_trace(std::size_t(state.range(0)));
  monitor::MonitorParams p;
  p.mbar = Rational(state.range(0));
  p.b = (p.mbar + 1) * p.r;
  const auto spec = monitor::build_spec(p);
  const dc::Formula& req = spec.get("Req");
  const dc::Interval whole{0, trace.horizon()};
  for (auto _ : state) {
    dc::Evaluator eval(trace);
    benchmark::DoNotOptimize(eval.formula(req, spec.valuation, whole));
  }
  state.counters["ticks"] = double(trace.horizon());
}
BENCHMARK(BM_EvalBoxReq)->Arg(1)->Arg(4)->Arg(10)->Arg(20);

void BM_EvalCycle(benchmark::State& state) {
  const dc::TimedTrace trace = lifespan_trace(1);
  const dc::SpecBundle spec = dc::load_spec(dc::bundled_spec_text());
  const dc::Formula& cycle = spec.formula("Cycle");
  for (auto _ : state) {
    dc::Evaluator eval(trace);
    benchmark::DoNotOptimize(eval.formula(cycle, spec.valuation, {0, trace.horizon()}));
  }
}
BENCHMARK(BM_EvalCycle);

void BM_PopulationStep(benchmark::State& state) {
  dca::SimulationConfig sim;
  sim.iterations = 1000;
  const auto batches = dca::to_batches(dca::simulate(sim).records);
  dca::PopulationConfig pc;
  pc.cell_count = std::size_t(state.range(0));
  dca::Population pop(pc);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pop.step(batches[i++ % batches.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PopulationStep)->Arg(10)->Arg(100);

void BM_ParseBundledSpec(benchmark::State& state) {
  const std::string_view text = dc::bundled_spec_text();
  for (auto _ : state) benchmark::DoNotOptimize(dc::load_spec(text));
  state.SetBytesProcessed(std::int64_t(state.iterations()) * std::int64_t(text.size()));
}
BENCHMARK(BM_ParseBundledSpec);

void BM_FormatParseRoundTrip(benchmark::State& state) {
  const dc::SpecBundle spec = dc::load_spec(dc::bundled_spec_text());
  const std::string text = dc::format(spec.formula("Cycle"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dc::format(dc::parse_formula(text, &spec.declarations)));
  }
}
BENCHMARK(BM_FormatParseRoundTrip);

void BM_SegmentByCount(benchmark::State& state) {
  dca::SimulationConfig sim;
  sim.iterations = 2000;
  dca::Population pop(dca::PopulationConfig{});
  const auto items = analysis::flatten(pop.run(dca::to_batches(dca::simulate(sim).records)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::analyse_segmented(items, analysis::SegmentationPolicy::by_count(10)));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(items.size()));
}
BENCHMARK(BM_SegmentByCount);

}  // namespace

BENCHMARK_MAIN();
