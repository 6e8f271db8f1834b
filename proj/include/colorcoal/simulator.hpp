#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "colorcoal/random.hpp"
#include "colorcoal/state_space.hpp"

namespace colorcoal {

enum class SimMode {
  Full,         ///< colored process on the lattice
  Lumped,       ///< parity chain
  Conditional,  ///< parity chain forced to the target root at level 2
};

struct SimConfig {
  int n = 2;
  int n1 = 0;  ///< initial black count; only its parity matters outside Full
  double x = 0.5;
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  SimMode mode = SimMode::Full;
  Parity target = Parity::Even;  ///< Conditional mode only
  std::vector<double> ccdf_grid;  ///< times at which the empirical CCDF is reported
  unsigned threads = 0;           ///< 0 = hardware concurrency

  void validate() const;
};

struct ParityBlock {
  int level;
  Parity parity;
  friend bool operator==(const ParityBlock&, const ParityBlock&) = default;
};

using ProcessState = std::variant<ColorState, ParityBlock>;

int level_of(const ProcessState& s) noexcept;
Parity parity_of(const ProcessState& s) noexcept;

struct TrajectoryEvent {
  double time;         ///< cumulative
  ProcessState state;  ///< state entered at `time`
};

struct Trajectory {
  ProcessState start;
  std::vector<TrajectoryEvent> events;
  ProcessState absorbed_at;
  double total_time = 0.0;
};

/// Gillespie path of the colored process (or the parity chain in Lumped
/// mode) from level n down to level 1.
Trajectory simulate_path(const SimConfig& cfg, RandomStream& rng);

/// Path of the conditional process, always absorbed at cfg.target.
Trajectory simulate_conditional(const SimConfig& cfg, RandomStream& rng);

struct CcdfPoint {
  double t;
  double value;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::uint64_t replicates = 0;
  double freq_white_root = 0.0;
  double freq_black_root = 0.0;
  double stderr_freq = 0.0;
  double mean_time_any = 0.0;
  double stderr_time_any = 0.0;
  double mean_time_white = 0.0;  ///< NaN when no replicate hit the white root
  double stderr_time_white = 0.0;
  double mean_time_black = 0.0;
  double stderr_time_black = 0.0;
  std::vector<CcdfPoint> empirical_ccdf;
  /// Fraction of replicates with even parity after k events, k = 0..n-1.
  std::vector<double> parity_even_after;
};

/// Runs cfg.replicates independent paths. Replicate i draws from
/// RandomStream::for_replicate(cfg.seed, i) and results are merged in index
/// order, so the report does not depend on cfg.threads.
SimReport run_experiment(const SimConfig& cfg);

}  // namespace colorcoal
