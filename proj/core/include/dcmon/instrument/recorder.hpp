#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dcmon/dc/trace.hpp"
#include "dcmon/dca/cell.hpp"
#include "dcmon/dca/population.hpp"

namespace dcmon::instrument {

using dc::Tick;

/// Duration of one event in ticks: fixed, or uniform over [lo, hi].
struct DurationModel {
  Tick lo = 1;
  Tick hi = 1;

  static DurationModel fixed(Tick ticks) { return {ticks, ticks}; }
  static DurationModel uniform(Tick lo, Tick hi) { return {lo, hi}; }
  bool deterministic() const noexcept { return lo == hi; }
  Tick draw(dca::Rng& rng) const;
};

/// Event indices E1..E5 map to 0..4.
inline constexpr std::size_t kEventCount = 5;

struct EventDurations {
  std::array<DurationModel, kEventCount> events{};
  /// Offline analysis duration l_a.
  DurationModel analysis = DurationModel::fixed(1);

  static EventDurations fixed(Tick l1, Tick l2, Tick l3, Tick l4, Tick l5);
  bool deterministic() const noexcept;
  /// Fixed duration of event `index` (0-based); requires a fixed model.
  Tick fixed_ticks(std::size_t index) const;
  /// Throws ConfigError unless every duration is >= 1 tick and lo <= hi.
  void validate() const;
};

enum class TimingMode {
  /// Iterations last exactly as long as their events.
  EventTime,
  /// Immature iterations are padded to the iteration period r; the slack is
  /// immature time with no event active.
  WallClock,
};

struct RecorderConfig {
  EventDurations durations;
  TimingMode mode = TimingMode::EventTime;
  /// Iteration period r in ticks.
  Tick iteration_ticks = 10;
  /// Width of one tick in seconds.
  Rational tick_seconds{1, 10};
  /// Accept iterations (or presentations) longer than r instead of throwing.
  bool allow_overflow = false;
  std::uint64_t seed = 1;
};

/// Per-lifespan measurements.
struct LifespanRecord {
  dc::Interval span;
  std::size_t signals = 0;   // m-bar
  std::size_t antigens = 0;  // n-bar
  std::array<std::vector<dc::Interval>, kEventCount> events;
  Tick immature = 0;  // integral of I
  Tick matured = 0;   // integral of M
  Tick duration() const noexcept { return immature + matured; }  // c

  friend bool operator==(const LifespanRecord&, const LifespanRecord&) = default;
};

/// Observables I, M, E1..E5 in this order.
std::vector<dc::Observable> cell_schema();

/// Lays out one cell's behavioural events on a tick axis and records them as
/// a TimedTrace. Events never overlap; each iteration's events must fit in
/// the iteration period unless overflow is allowed.
class TraceRecorder {
 public:
  explicit TraceRecorder(RecorderConfig config, std::uint64_t stream = 0);

  void on_event(dca::CellEvent event);

  Tick now() const noexcept { return now_; }
  /// Trace over [0, now()].
  dc::TimedTrace trace() const;
  /// Lifespans completed so far, measured by the scheduler itself.
  const std::vector<LifespanRecord>& lifespans() const noexcept { return lifespans_; }
  /// Number of iterations that exceeded r (only non-zero with allow_overflow).
  std::size_t overflows() const noexcept { return overflows_; }

 private:
  void run_event(std::size_t index);
  void close_iteration();

  RecorderConfig config_;
  dca::Rng rng_;
  dc::TraceBuilder builder_;
  Tick now_ = 0;
  Tick iteration_start_ = 0;
  bool iteration_closed_ = true;
  bool in_lifespan_ = false;
  LifespanRecord current_;
  std::vector<LifespanRecord> lifespans_;
  std::size_t overflows_ = 0;
};

/// Fans population events out to one recorder per cell.
class PopulationRecorder : public dca::CellEventSink {
 public:
  PopulationRecorder(std::size_t cells, const RecorderConfig& config);

  void on_event(std::size_t cell, dca::CellEvent event) override;
  const TraceRecorder& cell(std::size_t i) const { return recorders_.at(i); }
  std::size_t size() const noexcept { return recorders_.size(); }

 private:
  std::vector<TraceRecorder> recorders_;
};

struct Recording {
  dc::TimedTrace trace;
  std::vector<LifespanRecord> lifespans;
  std::vector<dca::Presentation> presentations;
};

/// Runs a single cell over `batches` with a recorder attached.
Recording record_cell(const dca::CellConfig& cell, std::span<const dca::IterationBatch> batches,
                      const RecorderConfig& config, std::uint64_t seed = 1);

/// Splits a recorded trace into lifespans (an immature run followed by a
/// matured run) and measures them via interval integration. Incomplete
/// trailing lifespans are skipped. Throws InstrumentationError when I and M
/// overlap or an observable of cell_schema() is missing.
std::vector<LifespanRecord> measure(const dc::TimedTrace& trace);

/// Exact check of int(I) = m(l1+l2) + n(l1+l3) + m*l4 and int(M) = l5.
/// Throws InstrumentationError unless `durations` is deterministic.
bool check_duration_identity(const LifespanRecord& record, const EventDurations& durations);

}  // namespace dcmon::instrument
