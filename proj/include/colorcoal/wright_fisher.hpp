#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colorcoal/random.hpp"

namespace colorcoal {

enum class Color : std::uint8_t { Black, White };

struct WfConfig {
  int population = 100;  ///< N
  std::vector<Color> initial_colors;  ///< one entry per sampled lineage
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  int sample_size() const noexcept { return static_cast<int>(initial_colors.size()); }
  void validate() const;
};

/// Lineages sharing a parent in generation `generation` (counted backward
/// from the sample at 0). Lineage ids 0..n-1 are the sample; each merge
/// creates the next unused id.
struct MergeEvent {
  std::int64_t generation;
  std::vector<int> children;
  int parent;
  Color color;
};

struct ColoredGenealogy {
  std::vector<MergeEvent> merge_events;
  Color root_color = Color::Black;
  int root = 0;
  std::int64_t tmrca_generations = 0;
};

/// Parent color when two lineages of colors a and b coalesce:
///   BB -> B w.p. x,     BW -> B w.p. 1-x,    WW -> B w.p. x.
Color merge_color(Color a, Color b, double x, RandomStream& rng);

/// Backward Wright-Fisher sampling: every generation each lineage picks a
/// parent uniformly among N; lineages sharing a parent merge, with the
/// pairwise color rule applied sequentially in uniformly random order.
ColoredGenealogy ancestral_recovery(const WfConfig& cfg, double x, RandomStream& rng);

struct WfSummary {
  std::uint64_t replicates = 0;
  double mean_tmrca_generations = 0.0;
  double mean_tmrca_coalescent = 0.0;  ///< generations / N
  double stderr_tmrca_coalescent = 0.0;
  double freq_black_root = 0.0;
  double freq_white_root = 0.0;
  double stderr_freq = 0.0;
  double limit_tmrca = 0.0;         ///< 2 - 2/n
  double limit_p_black_root = 0.0;  ///< colored-coalescent absorption probability
};

WfSummary run_wright_fisher(const WfConfig& cfg, double x);

struct ColorPosterior {
  double black;
  double white;
};

/// Posterior parent color given the children's colors, under the binomial
/// offspring-color law with parameters p (B parent) and q (W parent).
ColorPosterior parent_color_posterior(double p, double q, std::span<const Color> children,
                                      double prior_black);

}  // namespace colorcoal
