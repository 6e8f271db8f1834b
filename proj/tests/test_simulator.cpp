#include "doctest.h"

#include <cmath>
#include <vector>

#include "colorcoal/analytic.hpp"
#include "colorcoal/error.hpp"
#include "colorcoal/generator.hpp"
#include "colorcoal/simulator.hpp"

using namespace colorcoal;

namespace {

SimConfig config(int n, int n1, double x, std::uint64_t reps, std::uint64_t seed,
                 SimMode mode = SimMode::Full) {
  SimConfig c;
  c.n = n;
  c.n1 = n1;
  c.x = x;
  c.replicates = reps;
  c.seed = seed;
  c.mode = mode;
  return c;
}

}  // namespace

TEST_CASE("random stream basics") {
  RandomStream a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  RandomStream r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(r.below(7) < 7);
    REQUIRE(r.exponential(2.0) >= 0.0);
  }
  CHECK(stream_seed(5, 0) != stream_seed(5, 1));
  CHECK(stream_seed(5, 0) != stream_seed(6, 0));

  double sum = 0.0;
  for (int i = 0; i < 200000; ++i) sum += r.exponential(4.0);
  CHECK(sum / 200000 == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config(1, 0, 0.3, 10, 1).validate(), InvalidArgument);
  CHECK_THROWS_AS(config(4, 5, 0.3, 10, 1).validate(), InvalidArgument);
  CHECK_THROWS_AS(config(4, 1, 0.0, 10, 1).validate(), InvalidArgument);
  CHECK_THROWS_AS(config(4, 1, 0.3, 0, 1).validate(), InvalidArgument);
  auto c = config(4, 1, 0.3, 10, 1);
  c.ccdf_grid = {0.0, -1.0};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  RandomStream rng(1);
  CHECK_THROWS_AS(simulate_path(config(4, 1, 0.3, 1, 1, SimMode::Conditional), rng), InvalidArgument);
  CHECK_THROWS_AS(simulate_conditional(config(4, 1, 0.3, 1, 1), rng), InvalidArgument);
}

TEST_CASE("full trajectories follow the lattice") {
  const SimConfig cfg = config(8, 3, 0.35, 1, 0);
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = RandomStream::for_replicate(11, i);
    const Trajectory path = simulate_path(cfg, rng);
    REQUIRE(std::holds_alternative<ColorState>(path.start));
    REQUIRE(path.events.size() == 7);
    ColorState prev = std::get<ColorState>(path.start);
    double t = 0.0;
    for (const auto& e : path.events) {
      const auto s = std::get<ColorState>(e.state);
      REQUIRE(s.level() == prev.level() - 1);
      REQUIRE(e.time > t);
      bool reachable = false;
      for (const auto& m : outgoing_transitions(prev, cfg.x))
        if (m.rate > 0.0 && m.target == s) reachable = true;
      REQUIRE(reachable);
      prev = s;
      t = e.time;
    }
    REQUIRE(level_of(path.absorbed_at) == 1);
    REQUIRE(path.total_time == t);
  }
}

TEST_CASE("n = 2 from (1,1)") {
  const auto r = run_experiment(config(2, 1, 0.3, 200000, 42));
  CHECK(std::abs(r.freq_white_root - 0.3) <= 4 * r.stderr_freq);
  CHECK(std::abs(r.mean_time_any - 1.0) <= 4 * r.stderr_time_any);
}

TEST_CASE("total time and absorption frequencies") {
  const auto r = run_experiment(config(10, 0, 0.3, 100000, 3));
  CHECK(std::abs(r.mean_time_any - 1.8) <= 4 * r.stderr_time_any);
  const auto p = absorb_prob(0, 10, 0.3);
  CHECK(std::abs(r.freq_white_root - p.white) <= 4 * r.stderr_freq);

  const auto q = run_experiment(config(6, 3, 0.3, 100000, 9));
  CHECK(absorb_prob(3, 3, 0.3).white == doctest::Approx(0.49488).epsilon(1e-12));
  CHECK(std::abs(q.freq_white_root - 0.49488) <= 4 * q.stderr_freq);
  // Holding times depend only on the level, so the root color carries no
  // information about the coalescence time.
  CHECK(std::abs(q.mean_time_white - 5.0 / 3) <= 4 * q.stderr_time_white);
  CHECK(std::abs(q.mean_time_black - 5.0 / 3) <= 4 * q.stderr_time_black);
}

TEST_CASE("lumped mode agrees with the closed forms") {
  const auto r = run_experiment(config(7, 2, 0.2, 100000, 5, SimMode::Lumped));
  const auto p = absorb_prob(2, 5, 0.2);
  CHECK(std::abs(r.freq_white_root - p.white) <= 4 * r.stderr_freq);
  CHECK(std::abs(r.mean_time_white - 2.0 + 2.0 / 7) <= 4 * r.stderr_time_white);
  CHECK(std::abs(r.mean_time_black - 2.0 + 2.0 / 7) <= 4 * r.stderr_time_black);
}

TEST_CASE("parity after k events") {
  const auto r = run_experiment(config(9, 1, 0.25, 100000, 17));
  REQUIRE(r.parity_even_after.size() == 9);
  CHECK(r.parity_even_after[0] == 0.0);
  for (int k = 1; k < 9; ++k) {
    const double p = parity_distribution(k, 0.25, Parity::Odd).even;
    const double se = std::sqrt(p * (1 - p) / 100000.0);
    CHECK(std::abs(r.parity_even_after[static_cast<std::size_t>(k)] - p) <= 4 * se + 1e-12);
  }
}

TEST_CASE("conditional mode") {
  const auto r = run_experiment(config(10, 4, 0.5, 100000, 21, SimMode::Conditional));
  CHECK(r.freq_white_root == 1.0);
  CHECK(std::abs(r.mean_time_any - 2.8) <= 4 * r.stderr_time_any);

  auto cfg = config(3, 1, 0.3, 100000, 22, SimMode::Conditional);
  const auto s = run_experiment(cfg);
  CHECK(std::abs(s.mean_time_any - 3.095238095238095) <= 4 * s.stderr_time_any);
  cfg.n1 = 2;
  cfg.x = 0.25;
  const auto t = run_experiment(cfg);
  CHECK(std::abs(t.mean_time_any - 7.0 / 3) <= 4 * t.stderr_time_any);

  cfg = config(5, 2, 0.2, 1000, 23, SimMode::Conditional);
  cfg.target = Parity::Odd;
  const auto o = run_experiment(cfg);
  CHECK(o.freq_black_root == 1.0);
}

TEST_CASE("conditional mode is not rejection sampling") {
  // Deleting the jumps into the other root slows the last step, so the
  // conditional process outlasts the full process given the same root.
  const auto full = run_experiment(config(5, 1, 0.3, 100000, 31));
  auto cfg = config(5, 1, 0.3, 100000, 32, SimMode::Conditional);
  cfg.target = Parity::Odd;
  const auto cond = run_experiment(cfg);
  CHECK(std::abs(full.mean_time_black - 1.6) <= 4 * full.stderr_time_black);
  CHECK(std::abs(cond.mean_time_any - expected_colored_time(1, 4, 0.3).black) <= 4 * cond.stderr_time_any);
  CHECK(cond.mean_time_any > full.mean_time_black + 0.5);
}

TEST_CASE("empirical CCDF lies within a DKW band") {
  auto cfg = config(6, 0, 0.3, 20000, 77, SimMode::Conditional);
  for (int i = 0; i <= 200; ++i) cfg.ccdf_grid.push_back(0.05 * i);
  const auto r = run_experiment(cfg);
  const auto exact = ccdf_colored_time(6, Parity::Even, Parity::Even, 0.3);
  const double eps = std::sqrt(std::log(2.0 / 0.001) / (2.0 * 20000));
  REQUIRE(r.empirical_ccdf.size() == cfg.ccdf_grid.size());
  for (const auto& pt : r.empirical_ccdf) REQUIRE(std::abs(pt.value - exact(pt.t)) <= eps);
}

TEST_CASE("reports do not depend on the thread count") {
  auto cfg = config(12, 5, 0.4, 5000, 1234);
  cfg.ccdf_grid = {0.5, 1.0, 2.0};
  cfg.threads = 1;
  const auto a = run_experiment(cfg);
  cfg.threads = 7;
  const auto b = run_experiment(cfg);
  CHECK(a.freq_white_root == b.freq_white_root);
  CHECK(a.mean_time_any == b.mean_time_any);
  CHECK(a.stderr_time_any == b.stderr_time_any);
  CHECK(a.mean_time_white == b.mean_time_white);
  for (std::size_t i = 0; i < a.empirical_ccdf.size(); ++i)
    CHECK(a.empirical_ccdf[i].value == b.empirical_ccdf[i].value);
  CHECK(a.parity_even_after == b.parity_even_after);

  cfg.seed = 1235;
  const auto c = run_experiment(cfg);
  CHECK(c.mean_time_any != a.mean_time_any);
}
