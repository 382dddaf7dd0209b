#include "dcmon/analysis/latency.hpp"

#include <algorithm>

#include "dcmon/dca/population.hpp"
#include "dcmon/dca/simulate.hpp"
#include "dcmon/error.hpp"

namespace dcmon::analysis {

void LatencyParams::validate() const {
  if (c <= 0 || mbar <= 0 || b <= 0) throw ConfigError("c, mbar and b must be positive");
  if (la < 0) throw ConfigError("analysis duration must not be negative");
}

Rational offline_completion_time(const LatencyParams& p) {
  p.validate();
  return p.c * (Rational(static_cast<std::int64_t>(p.m)) / p.mbar) + p.la;
}

bool offline_deadline_ok(const LatencyParams& p) { return offline_completion_time(p) <= p.b; }

AffineFit fit_affine(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw EvalError("affine fit needs two or more points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw EvalError("affine fit needs two distinct x values");
  AffineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

}  // namespace

LatencyResult latency_experiment(const LatencyConfig& config) {
  if (!config.durations.deterministic()) {
    throw ConfigError("latency experiment needs fixed event durations");
  }
  config.policy.validate();
  const double tick = to_double(config.tick_seconds);
  const double la = static_cast<double>(config.durations.analysis.lo) * tick;
  const double segment_cost = static_cast<double>(config.segment_analysis_ticks) * tick;

  instrument::RecorderConfig rc;
  rc.durations = config.durations;
  rc.mode = instrument::TimingMode::WallClock;
  rc.iteration_ticks = config.iteration_ticks;
  rc.tick_seconds = config.tick_seconds;
  rc.seed = config.seed;

  LatencyResult result;
  double sum_c = 0.0;
  double sum_mbar = 0.0;
  std::size_t lifespans = 0;
  std::vector<double> xs, ys;

  for (std::size_t m : config.m_values) {
    dca::SimulationConfig sim;
    sim.iterations = m;
    sim.antigens_per_iteration = config.antigens_per_iteration;
    sim.seed = config.seed;
    sim.iteration_seconds = static_cast<double>(config.iteration_ticks) * tick;
    const auto batches = dca::to_batches(dca::simulate(sim).records);

    dca::PopulationConfig pc;
    pc.cell_count = config.cells;
    pc.cell = config.cell;
    pc.seed = config.seed;
    pc.iteration_seconds = sim.iteration_seconds;
    dca::Population population(pc);
    instrument::PopulationRecorder recorder(config.cells, rc);

    // Re-stamp every presented item with the simulated end of its E5.
    std::vector<std::size_t> presented(config.cells, 0);
    std::vector<Item> items;
    population.run(
        batches,
        [&](const dca::Presentation& p) {
          const auto& life = recorder.cell(p.cell).lifespans().at(presented[p.cell]++);
          const double t = static_cast<double>(life.span.end) * tick;
          for (const auto& it : p.items) items.push_back(Item{0, t, p.cell, it.type, it.id, it.mature});
        },
        &recorder);
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.time < b.time; });
    for (std::size_t i = 0; i < items.size(); ++i) items[i].ordinal = i;

    LatencyPoint point;
    point.m = m;
    dc::Tick finish = 0;
    for (std::size_t c = 0; c < recorder.size(); ++c) {
      finish = std::max(finish, recorder.cell(c).now());
      for (const auto& life : recorder.cell(c).lifespans()) {
        sum_c += static_cast<double>(life.duration()) * tick;
        sum_mbar += static_cast<double>(life.signals);
        ++lifespans;
        ++point.lifespans;
      }
    }
    point.offline_seconds = static_cast<double>(finish) * tick + la;

    std::vector<double> latencies;
    for (const auto& s : segment(items, config.policy)) {
      latencies.push_back(s.close_time - s.items.front().time + segment_cost);
    }
    point.segments = latencies.size();
    point.segment_latency_median = median(std::move(latencies));
    xs.push_back(static_cast<double>(m));
    ys.push_back(point.offline_seconds);
    result.points.push_back(point);
  }
  if (lifespans > 0) {
    result.mean_c = sum_c / static_cast<double>(lifespans);
    result.mean_mbar = sum_mbar / static_cast<double>(lifespans);
  }
  if (xs.size() >= 2) result.fit = fit_affine(xs, ys);
  return result;
}

}  // namespace dcmon::analysis
