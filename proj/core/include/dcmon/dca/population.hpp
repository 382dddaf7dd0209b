#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dcmon/dca/cell.hpp"

namespace dcmon::dca {

/// One signal and the antigens that arrived with it.
struct IterationBatch {
  DataInstance signal;
  std::vector<DataInstance> antigens;
};

/// Throws InputError unless `batch` holds exactly one signal followed by
/// antigen instances only.
void validate(const IterationBatch& batch);

enum class AntigenPolicy { RoundRobin, Random };

struct PopulationConfig {
  std::size_t cell_count = 10;
  CellConfig cell;
  /// Iteration period r in seconds.
  double iteration_seconds = 1.0;
  AntigenPolicy policy = AntigenPolicy::RoundRobin;
  std::uint64_t seed = 1;
  /// Worker threads used to step cells within one iteration.
  std::size_t threads = 1;

  void validate() const;
};

/// Behavioural events of the single-cell model, reported to observers in
/// the order they are performed.
enum class CellEvent {
  BeginIteration,
  Process,    // E1 data processing
  Transform,  // E2 signal transformation
  Sample,     // E3 antigen sampling
  Correlate,  // E4 temporal correlation
  Present,    // E5 information presenting
  EndIteration,
};

/// Receives events of cell `cell`. Calls for distinct cells may arrive
/// concurrently; calls for one cell are sequential.
class CellEventSink {
 public:
  virtual ~CellEventSink() = default;
  virtual void on_event(std::size_t cell, CellEvent event) = 0;
};

/// Drives one cell through one iteration: E1/E2 for the signal, E1/E3 per
/// antigen, E4, then E5 and reinitialisation if the cell migrated.
std::optional<Presentation> run_iteration(Cell& cell, const DataInstance& signal,
                                          std::span<const DataInstance> antigens, Rng& rng,
                                          CellEventSink* sink = nullptr, std::size_t index = 0);

/// Ordered cell outputs of one run.
struct PresentationLog {
  std::vector<Presentation> presentations;
  std::size_t iterations = 0;
  double t_begin = 0.0;
  double t_end = 0.0;

  std::size_t item_count() const;
};

/// Many cells stepped in lock-step, one signal per cell per iteration.
/// Output order is deterministic given (seed, input) irrespective of the
/// thread count: presentations are merged by cell index.
class Population {
 public:
  explicit Population(PopulationConfig config);

  const PopulationConfig& config() const noexcept { return config_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t iterations() const noexcept { return iterations_; }

  /// Cell index each antigen of the next step would go to; consumes the
  /// policy state exactly as step() does.
  std::vector<std::size_t> assign(std::size_t antigen_count);

  std::vector<Presentation> step(const IterationBatch& batch, CellEventSink* sink = nullptr);

  using PresentationCallback = std::function<void(const Presentation&)>;
  /// Steps through `batches`, handing each presentation to `on_presentation`
  /// as soon as its iteration completes.
  void run(std::span<const IterationBatch> batches, const PresentationCallback& on_presentation,
           CellEventSink* sink = nullptr);
  PresentationLog run(std::span<const IterationBatch> batches, CellEventSink* sink = nullptr);

 private:
  PopulationConfig config_;
  std::vector<Cell> cells_;
  std::vector<Rng> cell_rngs_;
  Rng policy_rng_;
  std::uint64_t next_cell_ = 0;
  std::size_t iterations_ = 0;
};

}  // namespace dcmon::dca
