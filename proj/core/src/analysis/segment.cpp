#include "dcmon/analysis/segment.hpp"

#include <cmath>

#include "dcmon/error.hpp"

namespace dcmon::analysis {

void SegmentationPolicy::validate() const {
  if (kind == Kind::ByCount && count < 1) throw ConfigError("segment count must be >= 1");
  if (kind == Kind::ByTime && !(period > 0.0 && std::isfinite(period))) {
    throw ConfigError("segment period must be positive");
  }
}

Segmenter::Segmenter(SegmentationPolicy policy) : policy_(policy) { policy_.validate(); }

std::optional<Segment> Segmenter::push(Item item) {
  std::optional<Segment> closed;
  if (policy_.kind == SegmentationPolicy::Kind::ByTime) {
    const auto period = static_cast<std::size_t>(std::floor(item.time / policy_.period));
    if (open_ && period < current_.id) {
      throw InputError("item timestamps decrease across a segment boundary");
    }
    if (open_ && period > current_.id) {
      current_.close_time = static_cast<double>(current_.id + 1) * policy_.period;
      closed = std::move(current_);
      open_ = false;
    }
    if (!open_) {
      current_ = Segment{period, {}, 0.0};
      open_ = true;
    }
    current_.items.push_back(std::move(item));
    return closed;
  }
  if (!open_) {
    current_ = Segment{next_id_++, {}, 0.0};
    open_ = true;
  }
  current_.items.push_back(std::move(item));
  if (current_.items.size() == policy_.count) {
    current_.close_time = current_.items.back().time;
    closed = std::move(current_);
    open_ = false;
  }
  return closed;
}

std::optional<Segment> Segmenter::finish() {
  if (!open_) return std::nullopt;
  open_ = false;
  current_.close_time = current_.items.back().time;
  return std::move(current_);
}

std::vector<Segment> segment(std::span<const Item> items, const SegmentationPolicy& policy) {
  Segmenter seg(policy);
  std::vector<Segment> out;
  for (const auto& it : items) {
    if (auto s = seg.push(it)) out.push_back(std::move(*s));
  }
  if (auto s = seg.finish()) out.push_back(std::move(*s));
  return out;
}

SegmentedResult analyse_segmented(std::span<const Item> items, const SegmentationPolicy& policy,
                                  double threshold, const SegmentCallback& on_close) {
  SegmentedResult result;
  result.cumulative.threshold = threshold;
  auto close = [&](const Segment& s) {
    McavReport report = analyse_items(s.items, threshold);
    report.coverage.segment = s.id;
    if (on_close) on_close(s, report);
    const McavReport pair[] = {result.cumulative, report};
    result.cumulative = merge(pair);
    result.segments.push_back(std::move(report));
  };
  Segmenter seg(policy);
  for (const auto& it : items) {
    if (auto s = seg.push(it)) close(*s);
  }
  if (auto s = seg.finish()) close(*s);
  return result;
}

}  // namespace dcmon::analysis
