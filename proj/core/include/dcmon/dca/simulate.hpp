#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcmon/dca/cell.hpp"
#include "dcmon/dca/stream_io.hpp"

namespace dcmon::dca {

/// Synthetic labelled stream: a baseline regime dominated by the safe signal
/// with an injected window of high PAMP/danger signal, during which most
/// antigens carry the anomalous type.
struct SimulationConfig {
  std::size_t iterations = 500;
  std::size_t antigens_per_iteration = 5;
  /// Fraction of iterations inside the anomaly window (centred in the run).
  double anomaly_fraction = 0.3;
  /// Probability that an antigen inside the window has the anomalous type.
  double anomalous_share = 0.8;
  std::string normal_type = "normal";
  std::string anomalous_type = "scan";
  double iteration_seconds = 1.0;
  std::uint64_t seed = 7;

  void validate() const;
};

struct AntigenLabel {
  std::uint64_t id = 0;
  std::string type;
  bool anomalous = false;
};

struct Simulation {
  std::vector<DataInstance> records;
  std::vector<AntigenLabel> labels;
  std::size_t window_begin = 0;  // first anomalous iteration
  std::size_t window_end = 0;    // one past the last
};

Simulation simulate(const SimulationConfig& config);

void write_records(std::ostream& out, const std::vector<DataInstance>& records, StreamFormat format);
/// One JSON object per antigen: {"id": .., "type": .., "anomalous": ..}.
void write_labels(std::ostream& out, const std::vector<AntigenLabel>& labels);

/// Splits simulated records into iteration batches without a serialisation
/// round trip.
std::vector<IterationBatch> to_batches(const std::vector<DataInstance>& records);

}  // namespace dcmon::dca
