#include "dcmon/analysis/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dcmon/error.hpp"
#include "json.hpp"

namespace dcmon::analysis {

std::vector<Item> flatten(std::span<const dca::Presentation> presentations,
                          std::size_t first_ordinal) {
  std::vector<Item> out;
  std::size_t ordinal = first_ordinal;
  for (const auto& p : presentations) {
    for (const auto& it : p.items) {
      out.push_back(Item{ordinal++, p.time, p.cell, it.type, it.id, it.mature});
    }
  }
  return out;
}

std::vector<Item> flatten(const dca::PresentationLog& log, std::size_t first_ordinal) {
  return flatten(std::span<const dca::Presentation>(log.presentations), first_ordinal);
}

Rational TypeCounts::mcav() const {
  if (total == 0) throw EvalError("mcav of a type without presentations");
  return Rational(static_cast<std::int64_t>(mature), static_cast<std::int64_t>(total));
}

Rational McavReport::mcav(const std::string& type) const { return counts.at(type).mcav(); }

bool McavReport::anomalous(const std::string& type) const {
  return to_double(mcav(type)) > threshold;
}

McavReport analyse_items(std::span<const Item> items, double threshold) {
  McavReport report;
  report.threshold = threshold;
  if (items.empty()) return report;
  for (const auto& it : items) {
    auto& c = report.counts[it.type];
    ++c.total;
    if (it.mature) ++c.mature;
  }
  report.coverage.first_item = items.front().ordinal;
  report.coverage.end_item = items.back().ordinal + 1;
  report.coverage.t_begin = items.front().time;
  report.coverage.t_end = items.back().time;
  return report;
}

McavReport analyse_offline(const dca::PresentationLog& log, double threshold) {
  const auto items = flatten(log);
  return analyse_items(items, threshold);
}

McavReport merge(std::span<const McavReport> reports) {
  McavReport out;
  if (reports.empty()) return out;
  out.threshold = reports.front().threshold;

  std::vector<const Coverage*> windows;
  for (const auto& r : reports) {
    if (r.threshold != out.threshold) throw MergeError("reports use different thresholds");
    if (!r.coverage.empty()) windows.push_back(&r.coverage);
    for (const auto& [type, c] : r.counts) {
      auto& dst = out.counts[type];
      dst.mature += c.mature;
      dst.total += c.total;
    }
  }
  std::sort(windows.begin(), windows.end(),
            [](const Coverage* a, const Coverage* b) { return a->first_item < b->first_item; });
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i]->first_item < windows[i - 1]->end_item) {
      throw MergeError("report windows overlap at item " + std::to_string(windows[i]->first_item));
    }
  }
  if (!windows.empty()) {
    out.coverage.first_item = windows.front()->first_item;
    out.coverage.end_item = windows.back()->end_item;
    out.coverage.t_begin = windows.front()->t_begin;
    out.coverage.t_end = windows.back()->t_end;
  }
  return out;
}

void write_json(std::ostream& out, const McavReport& report) {
  for (const auto& [type, c] : report.counts) {
    nlohmann::json row;
    row["type"] = type;
    row["mature"] = c.mature;
    row["total"] = c.total;
    row["mcav"] = to_double(c.mcav());
    row["anomalous"] = report.anomalous(type);
    if (report.coverage.segment) row["segment"] = *report.coverage.segment;
    out << row.dump() << '\n';
  }
}

void write_table(std::ostream& out, const McavReport& report) {
  std::size_t width = 4;
  for (const auto& entry : report.counts) width = std::max(width, entry.first.size());
  out << std::left << std::setw(static_cast<int>(width)) << "type" << std::right << std::setw(10)
      << "mature" << std::setw(10) << "total" << std::setw(10) << "mcav" << "  anomalous\n";
  for (const auto& [type, c] : report.counts) {
    std::ostringstream mcav;
    mcav << std::fixed << std::setprecision(4) << to_double(c.mcav());
    out << std::left << std::setw(static_cast<int>(width)) << type << std::right
        << std::setw(10) << c.mature << std::setw(10) << c.total << std::setw(10) << mcav.str()
        << "  " << (report.anomalous(type) ? "yes" : "no") << '\n';
  }
}

}  // namespace dcmon::analysis
