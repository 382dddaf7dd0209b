#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "dcmon/dc/trace.hpp"

namespace dcmon::dc {

/// JSON-lines trace format. A header record
///   {"schema": ["E1", {"name": "mode", "domain": [0, 1, 2]}], "horizon": 6, "tick_seconds": 1}
/// is followed by one record per change point
///   {"t": 3, "set": {"E1": 0, "E3": 1}}
/// Observables not mentioned keep their previous value (0 initially).
///
/// Multiplexed files carry a "cell" field on the header and on every record;
/// each cell has its own header. Pass `cell` to select one of them.
TimedTrace read_trace(std::istream& in, std::optional<int> cell = std::nullopt);
TimedTrace read_trace_text(std::string_view text, std::optional<int> cell = std::nullopt);

void write_trace(std::ostream& out, const TimedTrace& trace,
                 std::optional<int> cell = std::nullopt);
/// Writes one header+records block per trace, tagged with cell ids 0..n-1.
void write_traces(std::ostream& out, const std::vector<TimedTrace>& traces);

/// The bundled one-lifespan golden trace (unit_lifespan.jsonl).
std::string_view bundled_unit_lifespan_trace_text();

}  // namespace dcmon::dc
