#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcmon/analysis/segment.hpp"
#include "dcmon/dca/cell.hpp"
#include "dcmon/instrument/recorder.hpp"
#include "dcmon/quantity.hpp"

namespace dcmon::analysis {

/// Offline completion model: c lifespan duration, mbar signals per lifespan,
/// m total signals, la analysis duration, b deadline (seconds).
struct LatencyParams {
  Rational c{1};
  Rational mbar{1};
  std::uint64_t m = 0;
  Rational la{0};
  Rational b{1};

  /// Throws ConfigError unless c, mbar, b > 0 and la >= 0.
  void validate() const;
};

/// c * (m / mbar) + la.
Rational offline_completion_time(const LatencyParams& p);
/// offline_completion_time(p) <= b.
bool offline_deadline_ok(const LatencyParams& p);

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (x, y). Requires two distinct x values.
AffineFit fit_affine(std::span<const double> x, std::span<const double> y);

struct LatencyConfig {
  std::vector<std::size_t> m_values{100, 300, 1000, 3000};
  instrument::EventDurations durations = instrument::EventDurations::fixed(1, 1, 1, 1, 2);
  dc::Tick iteration_ticks = 10;
  Rational tick_seconds{1, 10};
  std::size_t cells = 10;
  dca::CellConfig cell;
  SegmentationPolicy policy = SegmentationPolicy::by_count(10);
  /// Simulated time to analyse one segment, in ticks.
  dc::Tick segment_analysis_ticks = 2;
  std::size_t antigens_per_iteration = 2;
  std::uint64_t seed = 1;
};

struct LatencyPoint {
  std::size_t m = 0;
  /// Simulated time until the last cell finished plus the offline analysis.
  double offline_seconds = 0.0;
  /// Median over segments of (result time - first item time).
  double segment_latency_median = 0.0;
  std::size_t segments = 0;
  std::size_t lifespans = 0;
};

struct LatencyResult {
  std::vector<LatencyPoint> points;
  AffineFit fit;
  /// Pooled lifespan measurements over all runs.
  double mean_c = 0.0;
  double mean_mbar = 0.0;
  double model_slope() const { return mean_mbar > 0.0 ? mean_c / mean_mbar : 0.0; }
};

/// Runs the population on simulated input of m signals for every m, with
/// wall-clock recorders supplying the simulated clock.
LatencyResult latency_experiment(const LatencyConfig& config);

}  // namespace dcmon::analysis
