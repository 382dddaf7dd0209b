#include "dcmon/dca/population.hpp"

#include <thread>

#include "dcmon/error.hpp"

namespace dcmon::dca {

void validate(const IterationBatch& batch) {
  if (classify(batch.signal) != DataKind::Signal) {
    throw InputError("iteration batch must start with a signal instance");
  }
  for (const auto& a : batch.antigens) {
    if (classify(a) != DataKind::Antigen) {
      throw InputError("iteration batch holds more than one signal instance");
    }
  }
}

void PopulationConfig::validate() const {
  if (cell_count < 1) throw ConfigError("cell_count must be at least 1");
  if (!(iteration_seconds > 0.0)) throw ConfigError("iteration period must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  cell.validate();
}

std::optional<Presentation> run_iteration(Cell& cell, const DataInstance& signal,
                                          std::span<const DataInstance> antigens, Rng& rng,
                                          CellEventSink* sink, std::size_t index) {
  auto emit = [&](CellEvent e) {
    if (sink) sink->on_event(index, e);
  };
  emit(CellEvent::BeginIteration);
  emit(CellEvent::Process);
  if (classify(signal) != DataKind::Signal) throw InputError("expected a signal instance");
  cell.transform_signals(*signal.signal, signal.timestamp);
  emit(CellEvent::Transform);
  for (const auto& a : antigens) {
    emit(CellEvent::Process);
    cell.sample_antigen(a);
    emit(CellEvent::Sample);
  }
  cell.correlate();
  emit(CellEvent::Correlate);
  std::optional<Presentation> out;
  if (cell.maybe_migrate()) {
    out = cell.present();
    out->cell = index;
    emit(CellEvent::Present);
    cell.reinitialise(rng);
  }
  emit(CellEvent::EndIteration);
  return out;
}

std::size_t PresentationLog::item_count() const {
  std::size_t n = 0;
  for (const auto& p : presentations) n += p.items.size();
  return n;
}

Population::Population(PopulationConfig config)
    : config_(std::move(config)), policy_rng_(derive_rng(config_.seed, ~std::uint64_t{0})) {
  config_.validate();
  cells_.reserve(config_.cell_count);
  cell_rngs_.reserve(config_.cell_count);
  for (std::size_t i = 0; i < config_.cell_count; ++i) {
    cell_rngs_.push_back(derive_rng(config_.seed, i));
    cells_.emplace_back(config_.cell, cell_rngs_.back());
  }
}

std::vector<std::size_t> Population::assign(std::size_t antigen_count) {
  std::vector<std::size_t> owner(antigen_count);
  const std::uint64_t n = cells_.size();
  for (auto& o : owner) {
    if (config_.policy == AntigenPolicy::RoundRobin) {
      o = static_cast<std::size_t>(next_cell_++ % n);
    } else {
      o = static_cast<std::size_t>(policy_rng_() % n);
    }
  }
  return owner;
}

std::vector<Presentation> Population::step(const IterationBatch& batch, CellEventSink* sink) {
  validate(batch);
  const std::size_t n = cells_.size();
  std::vector<std::vector<DataInstance>> share(n);
  auto owner = assign(batch.antigens.size());
  for (std::size_t j = 0; j < batch.antigens.size(); ++j) share[owner[j]].push_back(batch.antigens[j]);

  std::vector<std::optional<Presentation>> results(n);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      results[i] = run_iteration(cells_[i], batch.signal, share[i], cell_rngs_[i], sink, i);
    }
  };
  const std::size_t workers = std::min(config_.threads, n);
  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (n + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            work(w * chunk, std::min(n, (w + 1) * chunk));
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  ++iterations_;

  std::vector<Presentation> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

void Population::run(std::span<const IterationBatch> batches,
                     const PresentationCallback& on_presentation, CellEventSink* sink) {
  for (const auto& batch : batches) {
    for (const auto& p : step(batch, sink)) on_presentation(p);
  }
}

PresentationLog Population::run(std::span<const IterationBatch> batches, CellEventSink* sink) {
  PresentationLog log;
  if (!batches.empty()) {
    log.t_begin = batches.front().signal.timestamp;
    log.t_end = batches.back().signal.timestamp;
  }
  run(batches, [&](const Presentation& p) { log.presentations.push_back(p); }, sink);
  log.iterations = batches.size();
  return log;
}

}  // namespace dcmon::dca
