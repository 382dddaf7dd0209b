#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dcmon/analysis/report.hpp"

namespace dcmon::analysis {

struct SegmentationPolicy {
  enum class Kind { ByCount, ByTime };

  Kind kind = Kind::ByCount;
  std::size_t count = 10;  // z: items per segment
  double period = 1.0;     // delta: seconds per segment

  static SegmentationPolicy by_count(std::size_t z) { return {Kind::ByCount, z, 1.0}; }
  static SegmentationPolicy by_time(double delta) { return {Kind::ByTime, 10, delta}; }
  /// Throws ConfigError unless z >= 1 and delta > 0.
  void validate() const;
};

struct Segment {
  /// Sequence number for ByCount, period index floor(t / delta) for ByTime.
  std::size_t id = 0;
  std::vector<Item> items;
  /// Time the segment closed: the last item's time for ByCount and at
  /// stream end, the period boundary for ByTime.
  double close_time = 0.0;
};

/// Streaming segmenter. ByTime periods are right-open; empty periods emit
/// nothing.
class Segmenter {
 public:
  explicit Segmenter(SegmentationPolicy policy);

  /// Returns the segment closed by this item, if any. Throws InputError when
  /// timestamps decrease under ByTime.
  std::optional<Segment> push(Item item);
  /// Emits the final partial segment.
  std::optional<Segment> finish();

 private:
  SegmentationPolicy policy_;
  Segment current_;
  std::size_t next_id_ = 0;
  bool open_ = false;
};

std::vector<Segment> segment(std::span<const Item> items, const SegmentationPolicy& policy);

struct SegmentedResult {
  std::vector<McavReport> segments;
  McavReport cumulative;
};

using SegmentCallback = std::function<void(const Segment&, const McavReport&)>;

/// Analyses each segment on close and folds it into the cumulative report.
SegmentedResult analyse_segmented(std::span<const Item> items, const SegmentationPolicy& policy,
                                  double threshold = kDefaultThreshold,
                                  const SegmentCallback& on_close = {});

}  // namespace dcmon::analysis
