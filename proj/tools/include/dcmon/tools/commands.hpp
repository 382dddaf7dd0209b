#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcmon/analysis/latency.hpp"
#include "dcmon/analysis/report.hpp"
#include "dcmon/dc/trace.hpp"
#include "dcmon/dca/stream_io.hpp"
#include "dcmon/tools/config.hpp"

namespace dcmon::tools {

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { Json, Table };

struct DetectResult {
  analysis::McavReport report;
  std::size_t segments = 0;
  std::size_t presentations = 0;
};

/// Runs the population over the input stream and writes per-segment reports
/// (segmented mode) followed by the final report.
DetectResult cmd_detect(const EngineConfig& config, std::istream& in, dca::StreamFormat format,
                        std::ostream& out, OutputFormat output = OutputFormat::Json);

/// Writes the synthetic stream and, when `labels` is set, its ground truth.
dca::Simulation cmd_simulate(const EngineConfig& config, std::ostream& records,
                             dca::StreamFormat format, std::ostream* labels = nullptr);

struct MonitorOptions {
  /// Formulas to check; empty means the spec's check list.
  std::vector<std::string> formulas;
  std::vector<std::pair<std::string, Rational>> overrides;
  std::optional<dc::Interval> interval;
  OutputFormat output = OutputFormat::Table;
};

/// Evaluates spec formulas on the trace. Returns kExitOk iff all hold.
int cmd_monitor(std::string_view spec_text, const dc::TimedTrace& trace,
                const MonitorOptions& options, std::ostream& out);

struct RealtimeOptions {
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  /// Run the falsification batch instead of the conforming one.
  bool violate = false;
  OutputFormat output = OutputFormat::Table;
};

/// Conforming mode passes iff Req held on every run; violation mode passes
/// iff every run broke Des1 and at least one broke Req.
int cmd_realtime(const RealtimeOptions& options, std::ostream& out);

struct BenchOptions {
  std::vector<std::size_t> m_values{100, 300, 1000, 3000};
  /// Additionally time the host running offline analysis.
  bool wall_clock = false;
  OutputFormat output = OutputFormat::Table;
};

analysis::LatencyConfig latency_config(const EngineConfig& config,
                                       const std::vector<std::size_t>& m_values);
analysis::LatencyResult cmd_bench(const EngineConfig& config, const BenchOptions& options,
                                  std::ostream& out);

/// Records one trace per cell while running the population over the input
/// and writes them as a multiplexed trace file.
std::vector<dc::TimedTrace> cmd_record(const EngineConfig& config, std::istream& in,
                                       dca::StreamFormat format, std::ostream& out,
                                       instrument::TimingMode mode);

/// "name=value" with an integer, decimal or p/q value.
std::pair<std::string, Rational> parse_assignment(const std::string& text);

}  // namespace dcmon::tools
