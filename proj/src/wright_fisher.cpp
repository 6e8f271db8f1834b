#include "colorcoal/wright_fisher.hpp"

#include <algorithm>
#include <cmath>

#include "colorcoal/analytic.hpp"
#include "colorcoal/error.hpp"
#include "parallel.hpp"

namespace colorcoal {

namespace {

struct Lineage {
  int id;
  Color color;
  std::uint64_t parent = 0;
};

}  // namespace

void WfConfig::validate() const {
  detail::require(sample_size() >= 2, "wright-fisher: sample size must be at least 2");
  detail::require(sample_size() <= population, "wright-fisher: sample size must not exceed N");
  detail::require(replicates >= 1, "wright-fisher: replicates must be at least 1");
}

Color merge_color(Color a, Color b, double x, RandomStream& rng) {
  const double p_black = a == b ? x : 1.0 - x;
  return rng.bernoulli(p_black) ? Color::Black : Color::White;
}

ColoredGenealogy ancestral_recovery(const WfConfig& cfg, double x, RandomStream& rng) {
  cfg.validate();
  detail::require_color_parameter(x);
  std::vector<Lineage> lineages;
  for (int i = 0; i < cfg.sample_size(); ++i)
    lineages.push_back({i, cfg.initial_colors[static_cast<std::size_t>(i)]});
  int next_id = cfg.sample_size();
  const auto population = static_cast<std::uint64_t>(cfg.population);

  ColoredGenealogy g;
  std::int64_t generation = 0;
  std::vector<Lineage> next;
  while (lineages.size() > 1) {
    ++generation;
    for (auto& l : lineages) l.parent = rng.below(population);
    std::stable_sort(lineages.begin(), lineages.end(),
                     [](const Lineage& a, const Lineage& b) { return a.parent < b.parent; });
    next.clear();
    for (std::size_t lo = 0; lo < lineages.size();) {
      std::size_t hi = lo + 1;
      while (hi < lineages.size() && lineages[hi].parent == lineages[lo].parent) ++hi;
      if (hi - lo == 1) {
        next.push_back(lineages[lo]);
      } else {
        // Pairwise rule applied in a uniformly random order.
        for (std::size_t i = hi - 1; i > lo; --i)
          std::swap(lineages[i], lineages[lo + rng.below(i - lo + 1)]);
        MergeEvent ev{generation, {}, next_id++, lineages[lo].color};
        ev.children.push_back(lineages[lo].id);
        for (std::size_t i = lo + 1; i < hi; ++i) {
          ev.color = merge_color(ev.color, lineages[i].color, x, rng);
          ev.children.push_back(lineages[i].id);
        }
        next.push_back({ev.parent, ev.color});
        g.merge_events.push_back(std::move(ev));
      }
      lo = hi;
    }
    lineages.swap(next);
  }
  g.root = lineages.front().id;
  g.root_color = lineages.front().color;
  g.tmrca_generations = generation;
  return g;
}

WfSummary run_wright_fisher(const WfConfig& cfg, double x) {
  cfg.validate();
  detail::require_color_parameter(x);
  const std::uint64_t reps = cfg.replicates;
  std::vector<std::int64_t> tmrca(reps);
  std::vector<std::uint8_t> black_root(reps);
  detail::parallel_for(reps, detail::worker_count(cfg.threads, reps), [&](std::uint64_t i) {
    auto rng = RandomStream::for_replicate(cfg.seed, i);
    const auto g = ancestral_recovery(cfg, x, rng);
    tmrca[i] = g.tmrca_generations;
    black_root[i] = g.root_color == Color::Black;
  });

  WfSummary s;
  s.replicates = reps;
  const double r = static_cast<double>(reps), big_n = static_cast<double>(cfg.population);
  double sum = 0.0, blacks = 0.0;
  for (std::uint64_t i = 0; i < reps; ++i) {
    sum += static_cast<double>(tmrca[i]);
    blacks += black_root[i];
  }
  s.mean_tmrca_generations = sum / r;
  s.mean_tmrca_coalescent = s.mean_tmrca_generations / big_n;
  if (reps >= 2) {
    double ss = 0.0;
    for (auto t : tmrca) {
      const double d = static_cast<double>(t) / big_n - s.mean_tmrca_coalescent;
      ss += d * d;
    }
    s.stderr_tmrca_coalescent = std::sqrt(ss / (r - 1.0) / r);
  }
  s.freq_black_root = blacks / r;
  s.freq_white_root = 1.0 - s.freq_black_root;
  s.stderr_freq = std::sqrt(s.freq_black_root * s.freq_white_root / r);

  const int n = cfg.sample_size();
  const auto n_black = static_cast<int>(std::count(cfg.initial_colors.begin(), cfg.initial_colors.end(), Color::Black));
  s.limit_tmrca = expected_time_unconditional(n);
  s.limit_p_black_root = absorb_prob(n_black, n - n_black, x).black;
  return s;
}

ColorPosterior parent_color_posterior(double p, double q, std::span<const Color> children,
                                      double prior_black) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  detail::require(in_unit(p) && in_unit(q) && in_unit(prior_black),
                  "parent_color_posterior: probabilities must lie in [0, 1]");
  detail::require(!children.empty(), "parent_color_posterior: need at least one child");
  const auto b = static_cast<double>(std::count(children.begin(), children.end(), Color::Black));
  const double w = static_cast<double>(children.size()) - b;
  // The binomial coefficient is common to both likelihoods and cancels.
  const double like_black = std::pow(p, b) * std::pow(1.0 - p, w);
  const double like_white = std::pow(1.0 - q, b) * std::pow(q, w);
  const double joint_black = prior_black * like_black, joint_white = (1.0 - prior_black) * like_white;
  const double total = joint_black + joint_white;
  if (!(total > 0.0)) throw UndefinedPosterior("parent color posterior has zero total likelihood");
  return {joint_black / total, joint_white / total};
}

}  // namespace colorcoal
