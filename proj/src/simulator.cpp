#include "colorcoal/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "colorcoal/error.hpp"
#include "colorcoal/generator.hpp"
#include "parallel.hpp"

namespace colorcoal {

namespace {

struct ReplicateOutcome {
  double total_time = 0.0;
  Parity root = Parity::Even;
};

struct MeanAndError {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double stderr_ = 0.0;
};

MeanAndError summarize(const std::vector<double>& values) {
  MeanAndError out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double n = static_cast<double>(values.size());
    out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  detail::require(n >= 2, "simulation: n must be at least 2");
  detail::require(n1 >= 0 && n1 <= n, "simulation: n1 must satisfy 0 <= n1 <= n");
  detail::require_color_parameter(x);
  detail::require(replicates >= 1, "simulation: replicates must be at least 1");
  for (double t : ccdf_grid)
    detail::require(std::isfinite(t) && t >= 0.0, "simulation: CCDF grid times must be finite and >= 0");
}

int level_of(const ProcessState& s) noexcept {
  return std::visit([](const auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ColorState>)
      return v.level();
    else
      return v.level;
  }, s);
}

Parity parity_of(const ProcessState& s) noexcept {
  return std::visit([](const auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ColorState>)
      return colorcoal::parity_of(v);
    else
      return v.parity;
  }, s);
}

Trajectory simulate_path(const SimConfig& cfg, RandomStream& rng) {
  cfg.validate();
  detail::require(cfg.mode != SimMode::Conditional, "simulate_path: use simulate_conditional");
  Trajectory path;
  path.events.reserve(static_cast<std::size_t>(cfg.n) - 1);
  double t = 0.0;

  if (cfg.mode == SimMode::Full) {
    ColorState s{cfg.n1, cfg.n - cfg.n1};
    path.start = s;
    while (s.level() >= 2) {
      t += rng.exponential(pair_rate(s.level()));
      const auto moves = outgoing_transitions(s, cfg.x);
      double total = 0.0;
      for (const auto& m : moves) total += m.rate;
      const double u = rng.uniform() * total;
      double cumulative = 0.0;
      std::size_t pick = 0;
      // Last positive-rate move absorbs any rounding at the top of the range.
      for (std::size_t i = 0; i < moves.size(); ++i) {
        if (moves[i].rate <= 0.0) continue;
        pick = i;
        cumulative += moves[i].rate;
        if (u < cumulative) break;
      }
      s = moves[pick].target;
      path.events.push_back({t, s});
    }
    path.absorbed_at = s;
  } else {
    ParityBlock b{cfg.n, colorcoal::parity_of(ColorState{cfg.n1, cfg.n - cfg.n1})};
    path.start = b;
    while (b.level >= 2) {
      t += rng.exponential(pair_rate(b.level));
      if (!rng.bernoulli(1.0 - cfg.x)) b.parity = flip(b.parity);
      --b.level;
      path.events.push_back({t, b});
    }
    path.absorbed_at = b;
  }
  path.total_time = t;
  return path;
}

Trajectory simulate_conditional(const SimConfig& cfg, RandomStream& rng) {
  cfg.validate();
  detail::require(cfg.mode == SimMode::Conditional, "simulate_conditional: config mode must be conditional");
  Trajectory path;
  path.events.reserve(static_cast<std::size_t>(cfg.n) - 1);
  ParityBlock b{cfg.n, colorcoal::parity_of(ColorState{cfg.n1, cfg.n - cfg.n1})};
  path.start = b;
  double t = 0.0;
  while (b.level >= 3) {
    t += rng.exponential(pair_rate(b.level));
    if (!rng.bernoulli(1.0 - cfg.x)) b.parity = flip(b.parity);
    --b.level;
    path.events.push_back({t, b});
  }
  // E_2 exits at rate (1-x) r_2 toward the even root and x r_2 toward the
  // odd root; O_2 the other way round.
  const double share = b.parity == cfg.target ? 1.0 - cfg.x : cfg.x;
  t += rng.exponential(share * pair_rate(2));
  b = {1, cfg.target};
  path.events.push_back({t, b});
  path.absorbed_at = b;
  path.total_time = t;
  return path;
}

SimReport run_experiment(const SimConfig& cfg) {
  cfg.validate();
  const std::uint64_t reps = cfg.replicates;
  const auto steps = static_cast<std::size_t>(cfg.n);
  std::vector<ReplicateOutcome> outcomes(reps);
  std::vector<std::uint8_t> parities(reps * steps);

  detail::parallel_for(reps, detail::worker_count(cfg.threads, reps), [&](std::uint64_t i) {
    auto rng = RandomStream::for_replicate(cfg.seed, i);
    const Trajectory path =
        cfg.mode == SimMode::Conditional ? simulate_conditional(cfg, rng) : simulate_path(cfg, rng);
    outcomes[i] = {path.total_time, parity_of(path.absorbed_at)};
    std::uint8_t* row = parities.data() + i * steps;
    row[0] = parity_of(path.start) == Parity::Even;
    for (std::size_t k = 1; k < steps; ++k) row[k] = parity_of(path.events[k - 1].state) == Parity::Even;
  });

  SimReport report;
  report.seed = cfg.seed;
  report.replicates = reps;
  std::vector<double> all, white, black;
  all.reserve(reps);
  for (const auto& o : outcomes) {
    all.push_back(o.total_time);
    (o.root == Parity::Even ? white : black).push_back(o.total_time);
  }
  const double r = static_cast<double>(reps);
  report.freq_white_root = static_cast<double>(white.size()) / r;
  report.freq_black_root = static_cast<double>(black.size()) / r;
  report.stderr_freq = std::sqrt(report.freq_white_root * report.freq_black_root / r);

  const auto any = summarize(all), w = summarize(white), b = summarize(black);
  report.mean_time_any = any.mean;
  report.stderr_time_any = any.stderr_;
  report.mean_time_white = w.mean;
  report.stderr_time_white = w.stderr_;
  report.mean_time_black = b.mean;
  report.stderr_time_black = b.stderr_;

  std::sort(all.begin(), all.end());
  for (double t : cfg.ccdf_grid) {
    const auto below = std::lower_bound(all.begin(), all.end(), t) - all.begin();
    report.empirical_ccdf.push_back({t, static_cast<double>(all.size() - static_cast<std::size_t>(below)) / r});
  }

  report.parity_even_after.assign(steps, 0.0);
  for (std::uint64_t i = 0; i < reps; ++i)
    for (std::size_t k = 0; k < steps; ++k) report.parity_even_after[k] += parities[i * steps + k];
  for (double& f : report.parity_even_after) f /= r;
  return report;
}

}  // namespace colorcoal
