#include "dcmon/dc/trace_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dcmon/error.hpp"

namespace dcmon::dc {

using nlohmann::json;

namespace {

std::string where(std::size_t line_no) { return "trace line " + std::to_string(line_no) + ": "; }

Observable parse_observable(const json& j, std::size_t line_no) {
  if (j.is_string()) return Observable{j.get<std::string>(), {0, 1}};
  if (j.is_object() && j.contains("name") && j.at("name").is_string()) {
    Observable o{j.at("name").get<std::string>(), {0, 1}};
    if (j.contains("domain")) o.domain = j.at("domain").get<std::vector<int>>();
    return o;
  }
  throw SchemaError(where(line_no) + "schema entries must be names or {name, domain} objects");
}

std::optional<int> cell_of(const json& j) {
  if (!j.contains("cell")) return std::nullopt;
  return j.at("cell").get<int>();
}

Rational tick_width(double seconds) {
  if (!(seconds > 0)) throw SchemaError("tick_seconds must be positive");
  return approximate_rational(seconds);
}

}  // namespace

TimedTrace read_trace(std::istream& in, std::optional<int> cell) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<TraceBuilder> builder;
  std::map<std::string, std::size_t> index;
  Tick horizon = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where(line_no) + e.what());
    }
    try {
      if (!j.is_object()) throw SchemaError(where(line_no) + "record is not an object");
      if (cell_of(j) != cell) continue;
      if (j.contains("schema")) {
        if (builder) {
          if (cell) throw SchemaError(where(line_no) + "duplicate header for cell");
          throw SchemaError(where(line_no) + "duplicate header (multiplexed file? pass a cell id)");
        }
        std::vector<Observable> schema;
        for (const auto& entry : j.at("schema")) schema.push_back(parse_observable(entry, line_no));
        for (std::size_t i = 0; i < schema.size(); ++i) index[schema[i].name] = i;
        horizon = j.at("horizon").get<Tick>();
        double seconds = j.value("tick_seconds", 1.0);
        builder.emplace(std::move(schema), tick_width(seconds));
        continue;
      }
      if (!builder) throw SchemaError(where(line_no) + "change record before header");
      Tick t = j.at("t").get<Tick>();
      if (t < 0 || (t >= horizon && horizon > 0) || (horizon == 0 && t > 0)) {
        throw SchemaError(where(line_no) + "change point " + std::to_string(t) +
                          " outside [0, horizon)");
      }
      if (t < builder->last_change()) {
        throw SchemaError(where(line_no) + "change points must not decrease");
      }
      for (const auto& [name, value] : j.at("set").items()) {
        auto it = index.find(name);
        if (it == index.end()) throw SchemaError(where(line_no) + "unknown observable '" + name + "'");
        builder->set(t, it->second, value.get<int>());
      }
    } catch (const json::exception& e) {
      throw SchemaError(where(line_no) + e.what());
    }
  }
  if (!builder) {
    throw SchemaError(cell ? "no trace header for cell " + std::to_string(*cell)
                           : std::string("trace has no header record"));
  }
  return builder->build(horizon);
}

TimedTrace read_trace_text(std::string_view text, std::optional<int> cell) {
  std::istringstream in{std::string(text)};
  return read_trace(in, cell);
}

void write_trace(std::ostream& out, const TimedTrace& trace, std::optional<int> cell) {
  json header;
  if (cell) header["cell"] = *cell;
  json schema = json::array();
  for (const auto& o : trace.schema()) {
    if (o.domain == std::vector<int>{0, 1}) {
      schema.push_back(o.name);
    } else {
      schema.push_back({{"name", o.name}, {"domain", o.domain}});
    }
  }
  header["schema"] = schema;
  header["horizon"] = trace.horizon();
  header["tick_seconds"] = to_double(trace.tick_seconds());
  out << header.dump() << '\n';

  const std::vector<int>* previous = nullptr;
  for (const auto& seg : trace.segments()) {
    json rec;
    if (cell) rec["cell"] = *cell;
    rec["t"] = seg.start;
    json set = json::object();
    for (std::size_t k = 0; k < trace.schema().size(); ++k) {
      if (!previous || (*previous)[k] != seg.values[k]) set[trace.schema()[k].name] = seg.values[k];
    }
    rec["set"] = set;
    if (previous == nullptr && trace.horizon() == 0) break;
    out << rec.dump() << '\n';
    previous = &seg.values;
  }
}

void write_traces(std::ostream& out, const std::vector<TimedTrace>& traces) {
  for (std::size_t i = 0; i < traces.size(); ++i) write_trace(out, traces[i], static_cast<int>(i));
}

}  // namespace dcmon::dc
