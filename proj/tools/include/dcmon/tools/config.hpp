#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dcmon/analysis/segment.hpp"
#include "dcmon/dca/population.hpp"
#include "dcmon/dca/simulate.hpp"
#include "dcmon/instrument/recorder.hpp"

namespace dcmon::tools {

enum class AnalysisMode { Offline, Segmented };

/// Everything the commands need, loaded from one JSON document.
struct EngineConfig {
  std::uint64_t seed = 1;
  dca::PopulationConfig population;
  AnalysisMode analysis = AnalysisMode::Offline;
  analysis::SegmentationPolicy segmentation = analysis::SegmentationPolicy::by_count(10);
  double threshold = analysis::kDefaultThreshold;
  instrument::EventDurations durations = instrument::EventDurations::fixed(1, 1, 1, 1, 1);
  dc::Tick iteration_ticks = 10;
  Rational tick_seconds{1, 10};
  dca::SimulationConfig simulation;
  std::optional<std::string> input;
  std::optional<std::string> output;

  /// Throws ConfigError.
  void validate() const;
};

/// Parses a config document. Missing keys keep their defaults; unknown keys,
/// wrong types and invalid values throw ConfigError naming the key path.
EngineConfig parse_config(std::string_view text);
EngineConfig load_config(const std::string& path);

/// Pretty-printed JSON with every key.
std::string to_json(const EngineConfig& config);

}  // namespace dcmon::tools
