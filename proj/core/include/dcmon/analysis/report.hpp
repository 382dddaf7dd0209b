#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dcmon/dca/population.hpp"
#include "dcmon/quantity.hpp"

namespace dcmon::analysis {

/// One presented antigen item, flattened out of its presentation.
struct Item {
  std::size_t ordinal = 0;  // position in the presentation stream
  double time = 0.0;
  std::size_t cell = 0;
  std::string type;
  std::uint64_t id = 0;
  bool mature = false;
};

/// Items of `log` in stream order, numbered from `first_ordinal`.
std::vector<Item> flatten(const dca::PresentationLog& log, std::size_t first_ordinal = 0);
std::vector<Item> flatten(std::span<const dca::Presentation> presentations,
                          std::size_t first_ordinal = 0);

struct TypeCounts {
  std::uint64_t mature = 0;
  std::uint64_t total = 0;

  /// Requires total > 0.
  Rational mcav() const;
  friend bool operator==(const TypeCounts&, const TypeCounts&) = default;
};

/// Window a report covers: item ordinals [first_item, end_item) and the
/// timestamps of its first and last item.
struct Coverage {
  std::size_t first_item = 0;
  std::size_t end_item = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::optional<std::size_t> segment;

  bool empty() const noexcept { return end_item == first_item; }
};

inline constexpr double kDefaultThreshold = 0.5;

struct McavReport {
  /// Types with no presentations are absent.
  std::map<std::string, TypeCounts> counts;
  double threshold = kDefaultThreshold;
  Coverage coverage;

  /// Throws std::out_of_range for unknown types.
  Rational mcav(const std::string& type) const;
  bool anomalous(const std::string& type) const;
};

McavReport analyse_items(std::span<const Item> items, double threshold = kDefaultThreshold);
McavReport analyse_offline(const dca::PresentationLog& log, double threshold = kDefaultThreshold);

/// Sums counts of reports over disjoint windows. Throws MergeError when two
/// non-empty coverages overlap or thresholds differ.
McavReport merge(std::span<const McavReport> reports);

/// One JSON object per type:
/// {"type": .., "mature": n, "total": n, "mcav": x, "anomalous": bool}.
void write_json(std::ostream& out, const McavReport& report);
/// Aligned text table with a header row.
void write_table(std::ostream& out, const McavReport& report);

}  // namespace dcmon::analysis
