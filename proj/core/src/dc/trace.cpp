#include "dcmon/dc/trace.hpp"

#include <algorithm>
#include <set>

#include "dcmon/error.hpp"

namespace dcmon::dc {

bool Observable::admits(int value) const {
  return std::find(domain.begin(), domain.end(), value) != domain.end();
}

TimedTrace::TimedTrace(std::vector<Observable> schema, Tick horizon, std::vector<Segment> segments,
                       Rational tick_seconds)
    : schema_(std::move(schema)),
      horizon_(horizon),
      segments_(std::move(segments)),
      tick_seconds_(tick_seconds) {
  if (tick_seconds_ <= 0) throw SchemaError("tick width must be positive");
  if (horizon_ < 0) throw SchemaError("negative horizon");
  std::set<std::string> names;
  for (const auto& obs : schema_) {
    if (obs.name.empty()) throw SchemaError("empty observable name");
    if (obs.domain.empty()) throw SchemaError("observable '" + obs.name + "' has an empty domain");
    if (!names.insert(obs.name).second) {
      throw SchemaError("duplicate observable '" + obs.name + "'");
    }
  }
  if (segments_.empty()) throw SchemaError("trace has no segments");
  if (segments_.front().start != 0) throw SchemaError("first segment must start at 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    if (i > 0 && seg.start <= segments_[i - 1].start) {
      throw SchemaError("segment starts must strictly increase");
    }
    if (seg.start > horizon_ || (seg.start == horizon_ && horizon_ > 0)) {
      throw SchemaError("segment starts at or beyond the horizon");
    }
    if (seg.values.size() != schema_.size()) {
      throw SchemaError("segment does not assign every observable");
    }
    for (std::size_t k = 0; k < schema_.size(); ++k) {
      if (!schema_[k].admits(seg.values[k])) {
        throw SchemaError("value " + std::to_string(seg.values[k]) + " outside the domain of '" +
                          schema_[k].name + "'");
      }
    }
  }
}

std::optional<std::size_t> TimedTrace::find(const std::string& name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t TimedTrace::index_of(const std::string& name) const {
  auto idx = find(name);
  if (!idx) throw SchemaError("unknown observable '" + name + "'");
  return *idx;
}

std::size_t TimedTrace::segment_at(Tick t) const {
  if (t < 0 || t >= horizon_) {
    throw RangeError("time point " + std::to_string(t) + " outside [0, " +
                     std::to_string(horizon_) + ")");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](Tick v, const Segment& s) { return v < s.start; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

Tick TimedTrace::segment_end(std::size_t i) const {
  return i + 1 < segments_.size() ? segments_[i + 1].start : horizon_;
}

TraceBuilder::TraceBuilder(std::vector<Observable> schema, Rational tick_seconds)
    : schema_(std::move(schema)), tick_seconds_(tick_seconds) {
  segments_.push_back(Segment{0, std::vector<int>(schema_.size(), 0)});
}

TraceBuilder& TraceBuilder::set(Tick t, const std::string& name, int value) {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return set(t, i, value);
  }
  throw SchemaError("unknown observable '" + name + "'");
}

TraceBuilder& TraceBuilder::set(Tick t, std::size_t obs, int value) {
  if (t < last_change_) throw SchemaError("trace change points must be appended in time order");
  if (obs >= schema_.size()) throw SchemaError("observable index out of range");
  last_change_ = t;
  Segment& back = segments_.back();
  if (back.values[obs] == value) return *this;
  if (back.start == t) {
    back.values[obs] = value;
    // Collapse if this undoes the difference from the previous segment.
    if (segments_.size() > 1 && segments_[segments_.size() - 2].values == back.values) {
      segments_.pop_back();
    }
    return *this;
  }
  Segment next{t, back.values};
  next.values[obs] = value;
  segments_.push_back(std::move(next));
  return *this;
}

TimedTrace TraceBuilder::build(Tick horizon) const {
  std::vector<Segment> segs;
  for (const auto& s : segments_) {
    if (s.start >= horizon && s.start != 0) break;
    segs.push_back(s);
  }
  return TimedTrace(schema_, horizon, std::move(segs), tick_seconds_);
}

}  // namespace dcmon::dc
