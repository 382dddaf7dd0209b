#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcmon/dc/eval.hpp"
#include "dcmon/dc/spec.hpp"
#include "dcmon/dc/trace.hpp"
#include "dcmon/instrument/recorder.hpp"

namespace dcmon::monitor {

/// Valuation of the single-cell globals, in seconds.
struct MonitorParams {
  Rational b{11};
  Rational r{1};
  Rational mbar{10};
  std::array<Rational, instrument::kEventCount> l{Rational(1, 10), Rational(1, 10),
                                                  Rational(1, 10), Rational(1, 10),
                                                  Rational(1, 10)};

  /// Durations of a fixed duration model converted at `tick_seconds`.
  static MonitorParams from_durations(const instrument::EventDurations& durations,
                                      Rational tick_seconds, Rational r, Rational mbar,
                                      Rational b);
  /// Throws ConfigError unless every value is positive.
  void validate() const;
  dc::Valuation valuation() const;
};

/// F1, F2, Des1, Des2 and Req, in this order.
struct SingleCellSpec {
  std::vector<dc::NamedFormula> formulas;
  dc::Valuation valuation;

  const dc::Formula& get(const std::string& name) const;
};

SingleCellSpec build_spec(const MonitorParams& params);

struct Witness {
  std::string formula;
  dc::Interval interval;
  /// Observed terms on the interval (seconds) and the relevant globals.
  std::map<std::string, Quantity> values;
};

struct TheoremVerdict {
  bool des1_holds = false;
  bool des2_holds = false;
  bool req_holds = false;
  std::vector<Witness> witnesses;
  MonitorParams params;
  std::size_t lifespans = 0;

  bool design_holds() const noexcept { return des1_holds && des2_holds; }
};

/// Des1/Des2 over every subinterval of the trace; Req over every
/// subinterval of each complete lifespan. Throws InsufficientTraceError when
/// the trace has no complete lifespan.
TheoremVerdict check(const dc::TimedTrace& trace, const MonitorParams& params);

struct ExperimentConfig {
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  /// Runs of the falsification batch (l1 + l2 + l4 = 1.5 r, overflow allowed).
  std::size_t violation_runs = 0;
  /// Iteration period in ticks and tick width in seconds.
  dc::Tick iteration_ticks = 10;
  Rational tick_seconds{1, 10};
  std::size_t max_mbar = 10;
};

struct RunResult {
  std::size_t index = 0;
  std::size_t mbar = 0;
  std::size_t antigens = 0;
  Rational b;
  Rational c;  // measured lifespan duration
  TheoremVerdict verdict;

  Rational slack() const { return b - c; }
};

struct ExperimentSummary {
  std::vector<RunResult> conforming;
  std::vector<RunResult> violating;

  std::size_t req_holds() const;
  /// Conforming runs where Des1 and Des2 held but Req did not.
  std::size_t theorem_failures() const;
  std::size_t des1_detected() const;  // in the falsification batch
  std::size_t req_violations() const;  // in the falsification batch
  /// Min / mean / max of b - c over conforming runs, in seconds.
  std::optional<std::array<double, 3>> slack_stats() const;
};

/// Simulates one lifespan per run: m-bar is drawn from [1, max_mbar], event
/// durations satisfy l1 + l2 + l4 + n(l1 + l3) <= r and l5 <= r, and
/// b = (m-bar + 1) r.
ExperimentSummary realtime_experiment(const ExperimentConfig& config);

}  // namespace dcmon::monitor
