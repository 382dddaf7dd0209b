#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcmon/dca/cell.hpp"
#include "dcmon/dca/population.hpp"

namespace dcmon::dca {

enum class StreamFormat { JsonLines, Csv };

/// Picks the format from a file extension (".csv" -> Csv, otherwise JSON-lines).
StreamFormat format_for_path(const std::string& path);

/// Incremental reader of the input stream. JSON-lines records look like
///   {"t": 1.0, "kind": "signal", "signal": [0.5, 1.2, 3.1]}
///   {"t": 1.0, "kind": "antigen", "type": "scan", "id": 17}
/// An optional leading {"stream": ...} object is a header and skipped.
/// CSV records are "t,signal,v1,v2,..." or "t,antigen,type,id"; a first line
/// starting with "t," is a header and skipped. Blank lines and lines starting
/// with '#' are ignored. Errors name the 1-based record number.
class StreamReader {
 public:
  StreamReader(std::istream& in, StreamFormat format);

  std::optional<DataInstance> next();
  std::size_t records() const noexcept { return records_; }

 private:
  std::istream& in_;
  StreamFormat format_;
  std::size_t line_ = 0;
  std::size_t records_ = 0;
};

/// Groups records into iteration batches: a signal and the antigens that
/// follow it up to the next signal. Antigens preceding the first signal
/// join the first batch.
class BatchReader {
 public:
  BatchReader(std::istream& in, StreamFormat format);

  std::optional<IterationBatch> next();

 private:
  StreamReader reader_;
  std::optional<DataInstance> pending_signal_;
  std::vector<DataInstance> pending_antigens_;
  bool eof_ = false;
};

std::vector<IterationBatch> read_batches(std::istream& in, StreamFormat format);

void write_instance(std::ostream& out, const DataInstance& d, StreamFormat format);

}  // namespace dcmon::dca
