#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcmon/quantity.hpp"

namespace dcmon::dc {

/// Integer count of the global tick unit.
using Tick = std::int64_t;

/// Closed interval [begin, end] of tick points; point intervals are legal.
struct Interval {
  Tick begin = 0;
  Tick end = 0;

  Tick length() const noexcept { return end - begin; }
  bool contains(const Interval& other) const noexcept {
    return begin <= other.begin && other.end <= end;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A named observable ranging over a finite value domain ({0,1} by default).
struct Observable {
  std::string name;
  std::vector<int> domain{0, 1};

  bool admits(int value) const;
  friend bool operator==(const Observable&, const Observable&) = default;
};

/// One right-open piece of a piecewise-constant trace. `values` is indexed
/// like the trace schema.
struct Segment {
  Tick start = 0;
  std::vector<int> values;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Finite-variability interpretation of the schema observables over
/// [0, horizon]. Immutable after construction; the constructor validates
/// every layout invariant and throws SchemaError on violation.
class TimedTrace {
 public:
  TimedTrace(std::vector<Observable> schema, Tick horizon, std::vector<Segment> segments,
             Rational tick_seconds = Rational(1));

  const std::vector<Observable>& schema() const noexcept { return schema_; }
  const std::vector<Segment>& segments() const noexcept { return segments_; }
  Tick horizon() const noexcept { return horizon_; }
  /// Real-time width of one tick.
  const Rational& tick_seconds() const noexcept { return tick_seconds_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws SchemaError for unknown names.
  std::size_t index_of(const std::string& name) const;

  /// Index of the segment containing tick cell [t, t+1). Requires t < horizon.
  std::size_t segment_at(Tick t) const;
  /// End of segment `i` (start of the next one, or the horizon).
  Tick segment_end(std::size_t i) const;

  /// Value of observable `obs` on tick cell [t, t+1).
  int value(std::size_t obs, Tick t) const { return segments_[segment_at(t)].values[obs]; }

  friend bool operator==(const TimedTrace&, const TimedTrace&) = default;

 private:
  std::vector<Observable> schema_;
  Tick horizon_;
  std::vector<Segment> segments_;
  Rational tick_seconds_;
};

/// Builds a trace by appending change points in increasing time order.
/// Observables not mentioned at a change point keep their previous value
/// (0 before the first change point). Adjacent identical segments are merged.
class TraceBuilder {
 public:
  explicit TraceBuilder(std::vector<Observable> schema, Rational tick_seconds = Rational(1));

  /// Sets `name` to `value` from tick `t` on. `t` must not precede the last change.
  TraceBuilder& set(Tick t, const std::string& name, int value);
  TraceBuilder& set(Tick t, std::size_t obs, int value);

  Tick last_change() const noexcept { return last_change_; }
  const std::vector<Observable>& schema() const noexcept { return schema_; }

  TimedTrace build(Tick horizon) const;

 private:
  std::vector<Observable> schema_;
  Rational tick_seconds_;
  std::vector<Segment> segments_;
  Tick last_change_ = 0;
};

}  // namespace dcmon::dc
