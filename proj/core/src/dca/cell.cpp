#include "dcmon/dca/cell.hpp"

#include <cmath>

#include "dcmon/error.hpp"

namespace dcmon::dca {

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

DataInstance DataInstance::make_signal(double t, std::vector<double> values) {
  DataInstance d;
  d.timestamp = t;
  d.signal = std::move(values);
  return d;
}

DataInstance DataInstance::make_antigen(double t, std::string type, std::uint64_t id) {
  DataInstance d;
  d.timestamp = t;
  d.antigen = Antigen{std::move(type), id};
  return d;
}

DataKind classify(const DataInstance& instance) {
  if (instance.signal.has_value() == instance.antigen.has_value()) {
    throw InputError(instance.signal ? "data instance carries both a signal and an antigen"
                                     : "data instance carries neither a signal nor an antigen");
  }
  if (instance.signal) {
    for (double v : *instance.signal) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError("signal values must be finite and non-negative");
      }
    }
    return DataKind::Signal;
  }
  if (instance.antigen->type.empty()) throw InputError("antigen without a type");
  return DataKind::Antigen;
}

void CellConfig::validate() const {
  if (csm_weights.empty()) throw ConfigError("at least one signal category is required");
  if (csm_weights.size() != context_weights.size()) {
    throw ConfigError("csm and context weight rows differ in length");
  }
  if (!(threshold_lo > 0.0) || !(threshold_hi >= threshold_lo)) {
    throw ConfigError("migration threshold range must satisfy 0 < lo <= hi");
  }
}

Cell::Cell(CellConfig config, Rng& rng) : config_(std::move(config)) {
  config_.validate();
  reset(rng);
}

void Cell::reset(Rng& rng) {
  state_ = CellState::Immature;
  context_ = Context::Semi;
  csm_ = 0.0;
  k_acc_ = 0.0;
  signals_ = 0;
  antigens_ = 0;
  correlations_ = 0;
  presented_ = false;
  store_.clear();
  threshold_ = config_.threshold_lo +
               (config_.threshold_hi - config_.threshold_lo) * uniform_unit(rng);
}

void Cell::require_immature(const char* op) const {
  if (state_ != CellState::Immature) throw StateError(std::string(op) + " on a matured cell");
}

void Cell::transform_signals(std::span<const double> signal, double timestamp) {
  require_immature("signal transformation");
  if (signal.size() != config_.categories()) {
    throw InputError("signal has " + std::to_string(signal.size()) + " categories, expected " +
                     std::to_string(config_.categories()));
  }
  for (std::size_t i = 0; i < signal.size(); ++i) {
    csm_ += config_.csm_weights[i] * signal[i];
    k_acc_ += config_.context_weights[i] * signal[i];
  }
  clock_ = timestamp;
  ++signals_;
}

void Cell::sample_antigen(const DataInstance& antigen) {
  require_immature("antigen sampling");
  if (classify(antigen) != DataKind::Antigen) throw InputError("sampled instance is not an antigen");
  store_.push_back(StoredAntigen{*antigen.antigen, antigen.timestamp, std::nullopt});
  ++antigens_;
}

void Cell::correlate() {
  require_immature("temporal correlation");
  for (auto& stored : store_) stored.correlated_at = clock_;
  ++correlations_;
}

bool Cell::maybe_migrate() {
  if (state_ != CellState::Immature) return false;
  if (csm_ < threshold_) return false;
  state_ = CellState::Matured;
  context_ = k_acc_ > config_.context_cutoff ? Context::Full : Context::Semi;
  return true;
}

Presentation Cell::present() {
  if (state_ != CellState::Matured) throw StateError("presentation by an immature cell");
  if (presented_) throw StateError("lifespan already presented");
  presented_ = true;
  Presentation p;
  p.time = clock_;
  p.signals = signals_;
  p.antigens = antigens_;
  const bool mature = context_ == Context::Full;
  p.items.reserve(store_.size());
  for (const auto& stored : store_) {
    p.items.push_back(PresentedItem{stored.antigen.type, stored.antigen.id, mature});
  }
  return p;
}

void Cell::reinitialise(Rng& rng) {
  if (state_ != CellState::Matured || !presented_) {
    throw StateError("reinitialise requires a matured, presented cell");
  }
  reset(rng);
}

}  // namespace dcmon::dca
