#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace dcmon::dca {

/// Seeded generator used for every random draw in the engine.
using Rng = std::mt19937_64;

/// Uniform draw in [0, 1) built from the raw 64-bit output so that streams
/// are identical across standard library implementations.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Generator for stream `index` derived from `seed` (cells, runs, ...).
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

enum class DataKind { Signal, Antigen };

struct Antigen {
  std::string type;
  std::uint64_t id = 0;
};

/// One input record: either a signal vector or an antigen, never both.
struct DataInstance {
  double timestamp = 0.0;
  std::optional<std::vector<double>> signal;
  std::optional<Antigen> antigen;

  static DataInstance make_signal(double t, std::vector<double> values);
  static DataInstance make_antigen(double t, std::string type, std::uint64_t id);
};

/// Data processing (E1): reads the kind tag. Throws InputError when both or
/// neither payloads are present, or a signal value is negative.
DataKind classify(const DataInstance& instance);

/// Weights, migration-threshold range and context rule of one cell.
struct CellConfig {
  /// Row "csm" and row "context" of the 2 x k weight matrix, over the signal
  /// categories (PAMP, danger, safe) by default.
  std::vector<double> csm_weights{2.0, 1.0, 2.0};
  std::vector<double> context_weights{2.0, 1.0, -3.0};
  double threshold_lo = 20.0;
  double threshold_hi = 60.0;
  /// A matured cell is fully mature iff its context accumulator exceeds this.
  double context_cutoff = 0.0;

  std::size_t categories() const noexcept { return csm_weights.size(); }
  /// Throws ConfigError.
  void validate() const;
};

enum class CellState { Immature, Matured };
enum class Context { Semi, Full };

struct StoredAntigen {
  Antigen antigen;
  double sampled_at = 0.0;
  /// Timestamp of the latest signal the antigen was correlated with.
  std::optional<double> correlated_at;
};

struct PresentedItem {
  std::string type;
  std::uint64_t id = 0;
  bool mature = false;  // context bit
};

/// Output of one lifespan.
struct Presentation {
  double time = 0.0;
  std::size_t cell = 0;
  std::vector<PresentedItem> items;
  std::size_t signals = 0;   // m-bar contribution
  std::size_t antigens = 0;  // n-bar contribution
};

/// Single-cell state machine: Immature -> Matured -> (present) -> Immature.
/// Single owner; not safe for concurrent mutation.
class Cell {
 public:
  Cell(CellConfig config, Rng& rng);

  CellState state() const noexcept { return state_; }
  /// Only meaningful once matured.
  Context context() const noexcept { return context_; }
  double csm() const noexcept { return csm_; }
  double context_accumulator() const noexcept { return k_acc_; }
  double threshold() const noexcept { return threshold_; }
  std::size_t signals_processed() const noexcept { return signals_; }
  std::size_t antigens_sampled() const noexcept { return antigens_; }
  std::size_t correlations() const noexcept { return correlations_; }
  const std::vector<StoredAntigen>& antigen_store() const noexcept { return store_; }
  const CellConfig& config() const noexcept { return config_; }

  /// Signal transformation (E2). Throws StateError when matured and
  /// InputError on a category-count mismatch.
  void transform_signals(std::span<const double> signal, double timestamp);
  /// Antigen sampling (E3).
  void sample_antigen(const DataInstance& antigen);
  /// Temporal correlation (E4): once per processed signal.
  void correlate();
  /// Matures the cell when csm >= threshold. Returns true on migration.
  bool maybe_migrate();
  /// Information presenting (E5). Allowed once per lifespan.
  Presentation present();
  /// Starts a new lifespan with a fresh threshold. Requires a presented cell.
  void reinitialise(Rng& rng);

 private:
  void require_immature(const char* op) const;
  void reset(Rng& rng);

  CellConfig config_;
  CellState state_ = CellState::Immature;
  Context context_ = Context::Semi;
  double csm_ = 0.0;
  double k_acc_ = 0.0;
  double threshold_ = 0.0;
  double clock_ = 0.0;
  std::size_t signals_ = 0;
  std::size_t antigens_ = 0;
  std::size_t correlations_ = 0;
  bool presented_ = false;
  std::vector<StoredAntigen> store_;
};

}  // namespace dcmon::dca
