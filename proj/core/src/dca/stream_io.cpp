#include "dcmon/dca/stream_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "dcmon/error.hpp"
#include "json.hpp"

namespace dcmon::dca {

using nlohmann::json;

StreamFormat format_for_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return StreamFormat::Csv;
  return StreamFormat::JsonLines;
}

StreamReader::StreamReader(std::istream& in, StreamFormat format) : in_(in), format_(format) {}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: " + s);
  return v;
}

bool is_json_header(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  return j.is_object() && j.contains("stream") && !j.contains("kind");
}

DataInstance parse_json_record(const std::string& line) {
  json j = json::parse(line);
  if (!j.is_object()) throw InputError("record is not an object");
  double t = j.at("t").get<double>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "signal") {
    if (j.contains("type")) throw InputError("signal record carries an antigen type");
    return DataInstance::make_signal(t, j.at("signal").get<std::vector<double>>());
  }
  if (kind == "antigen") {
    if (j.contains("signal")) throw InputError("antigen record carries a signal payload");
    return DataInstance::make_antigen(t, j.at("type").get<std::string>(),
                                      j.value("id", std::uint64_t{0}));
  }
  throw InputError("unknown record kind '" + kind + "'");
}

DataInstance parse_csv_record(const std::vector<std::string>& f) {
  if (f.size() < 2) throw InputError("expected at least 't,kind'");
  double t = to_number(f[0]);
  if (f[1] == "signal") {
    std::vector<double> values;
    for (std::size_t i = 2; i < f.size(); ++i) values.push_back(to_number(f[i]));
    if (values.empty()) throw InputError("signal record without values");
    return DataInstance::make_signal(t, std::move(values));
  }
  if (f[1] == "antigen") {
    if (f.size() < 3 || f.size() > 4) throw InputError("expected 't,antigen,type[,id]'");
    std::uint64_t id = f.size() == 4 ? std::stoull(f[3]) : 0;
    return DataInstance::make_antigen(t, f[2], id);
  }
  throw InputError("unknown record kind '" + f[1] + "'");
}

}  // namespace

std::optional<DataInstance> StreamReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (format_ == StreamFormat::Csv && line_ == 1 && line.compare(first, 2, "t,") == 0) continue;
    if (format_ == StreamFormat::JsonLines && records_ == 0 && is_json_header(line)) continue;
    ++records_;
    try {
      DataInstance d = format_ == StreamFormat::JsonLines ? parse_json_record(line)
                                                          : parse_csv_record(split_csv(line));
      classify(d);
      return d;
    } catch (const std::exception& e) {
      throw InputError("record " + std::to_string(records_) + " (line " + std::to_string(line_) +
                       "): " + e.what());
    }
  }
  return std::nullopt;
}

BatchReader::BatchReader(std::istream& in, StreamFormat format) : reader_(in, format) {}

std::optional<IterationBatch> BatchReader::next() {
  while (!eof_) {
    auto d = reader_.next();
    if (!d) {
      eof_ = true;
      break;
    }
    if (d->signal) {
      if (pending_signal_) {
        IterationBatch batch{std::move(*pending_signal_), std::move(pending_antigens_)};
        pending_antigens_.clear();
        pending_signal_ = std::move(*d);
        return batch;
      }
      pending_signal_ = std::move(*d);
    } else {
      pending_antigens_.push_back(std::move(*d));
    }
  }
  if (pending_signal_) {
    IterationBatch batch{std::move(*pending_signal_), std::move(pending_antigens_)};
    pending_signal_.reset();
    pending_antigens_.clear();
    return batch;
  }
  if (!pending_antigens_.empty()) throw InputError("stream holds antigens but no signal");
  return std::nullopt;
}

std::vector<IterationBatch> read_batches(std::istream& in, StreamFormat format) {
  BatchReader reader(in, format);
  std::vector<IterationBatch> out;
  while (auto b = reader.next()) out.push_back(std::move(*b));
  return out;
}

void write_instance(std::ostream& out, const DataInstance& d, StreamFormat format) {
  if (format == StreamFormat::JsonLines) {
    json j;
    j["t"] = d.timestamp;
    if (d.signal) {
      j["kind"] = "signal";
      j["signal"] = *d.signal;
    } else {
      j["kind"] = "antigen";
      j["type"] = d.antigen->type;
      j["id"] = d.antigen->id;
    }
    out << j.dump() << '\n';
    return;
  }
  out << json(d.timestamp).dump();
  if (d.signal) {
    out << ",signal";
    for (double v : *d.signal) out << ',' << json(v).dump();
  } else {
    out << ",antigen," << d.antigen->type << ',' << d.antigen->id;
  }
  out << '\n';
}

}  // namespace dcmon::dca
