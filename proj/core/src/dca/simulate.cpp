#include "dcmon/dca/simulate.hpp"

#include <cmath>
#include <ostream>

#include "dcmon/error.hpp"
#include "json.hpp"

namespace dcmon::dca {

void SimulationConfig::validate() const {
  if (!(anomaly_fraction >= 0.0 && anomaly_fraction <= 1.0)) {
    throw ConfigError("anomaly_fraction must lie in [0, 1]");
  }
  if (!(anomalous_share >= 0.0 && anomalous_share <= 1.0)) {
    throw ConfigError("anomalous_share must lie in [0, 1]");
  }
  if (!(iteration_seconds > 0.0)) throw ConfigError("iteration period must be positive");
  if (normal_type.empty() || anomalous_type.empty() || normal_type == anomalous_type) {
    throw ConfigError("normal and anomalous antigen types must be distinct and non-empty");
  }
}

namespace {

double draw(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform_unit(rng); }

}  // namespace

Simulation simulate(const SimulationConfig& config) {
  config.validate();
  Rng rng = derive_rng(config.seed, 0);
  Simulation sim;
  auto window = static_cast<std::size_t>(std::llround(config.anomaly_fraction *
                                                      static_cast<double>(config.iterations)));
  sim.window_begin = (config.iterations - window) / 2;
  sim.window_end = sim.window_begin + window;

  std::uint64_t next_id = 0;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    const double t = static_cast<double>(it) * config.iteration_seconds;
    const bool anomalous = it >= sim.window_begin && it < sim.window_end;
    // (PAMP, danger, safe)
    std::vector<double> signal =
        anomalous ? std::vector<double>{draw(rng, 2.0, 4.0), draw(rng, 3.0, 6.0), draw(rng, 0.0, 1.0)}
                  : std::vector<double>{draw(rng, 0.0, 1.0), draw(rng, 0.0, 2.0), draw(rng, 2.0, 4.0)};
    sim.records.push_back(DataInstance::make_signal(t, std::move(signal)));
    for (std::size_t a = 0; a < config.antigens_per_iteration; ++a) {
      const bool planted = anomalous && uniform_unit(rng) < config.anomalous_share;
      const std::string& type = planted ? config.anomalous_type : config.normal_type;
      sim.records.push_back(DataInstance::make_antigen(t, type, next_id));
      sim.labels.push_back(AntigenLabel{next_id, type, planted});
      ++next_id;
    }
  }
  return sim;
}

void write_records(std::ostream& out, const std::vector<DataInstance>& records, StreamFormat format) {
  if (format == StreamFormat::Csv) {
    out << "t,kind,values\n";
  } else {
    out << R"({"stream":"dcmon","categories":["pamp","danger","safe"]})" << '\n';
  }
  for (const auto& d : records) write_instance(out, d, format);
}

void write_labels(std::ostream& out, const std::vector<AntigenLabel>& labels) {
  for (const auto& l : labels) {
    nlohmann::json j{{"id", l.id}, {"type", l.type}, {"anomalous", l.anomalous}};
    out << j.dump() << '\n';
  }
}

std::vector<IterationBatch> to_batches(const std::vector<DataInstance>& records) {
  std::vector<IterationBatch> out;
  std::vector<DataInstance> leading;
  for (const auto& d : records) {
    if (classify(d) == DataKind::Signal) {
      out.push_back(IterationBatch{d, {}});
      if (!leading.empty()) {
        out.back().antigens = std::move(leading);
        leading.clear();
      }
    } else if (out.empty()) {
      leading.push_back(d);
    } else {
      out.back().antigens.push_back(d);
    }
  }
  if (!leading.empty()) throw InputError("stream holds antigens but no signal");
  return out;
}

}  // namespace dcmon::dca
