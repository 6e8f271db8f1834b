// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "colorcoal/analytic.hpp"
#include "colorcoal/generator.hpp"
#include "colorcoal/lumping.hpp"
#include "colorcoal/simulator.hpp"
#include "colorcoal/wright_fisher.hpp"

using namespace colorcoal;

namespace {

const double kXGrid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const Parity kParities[] = {Parity::Even, Parity::Odd};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst observed value of some error against a bound.
struct Worst {
  double value = 0.0;
  void see(double v) { value = std::max(value, std::isnan(v) ? INFINITY : v); }
};

char buf[512];

const char* fmt(const char* f, double a, double b = 0, double c = 0) {
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome criterion1() {
  Worst err;
  for (int n = 2; n <= 20; ++n)
    for (double x : kXGrid) {
      const Vector t = expected_absorption_times(jump_chain(build_generator(n, x)));
      for (int k = 0; k <= n; ++k) err.see(std::abs(t(k) - (2.0 - 2.0 / n)));
    }
  return {err.value <= 1e-12, fmt("max |E[T] - (2 - 2/n)| = %.3g", err.value)};
}

Outcome criterion2() {
  Worst err;
  for (int n = 2; n <= 20; ++n)
    for (int n1 = 0; n1 <= n; ++n1) {
      const auto e = expected_colored_time(n1, n - n1, 0.5);
      const auto p = absorb_prob(n1, n - n1, 0.5);
      err.see(std::abs(e.white - (3.0 - 2.0 / n)));
      err.see(std::abs(e.black - (3.0 - 2.0 / n)));
      err.see(std::abs(p.white - 0.5));
      err.see(std::abs(p.black - 0.5));
    }
  return {err.value <= 1e-12, fmt("max deviation from (3 - 2/n, 1/2) = %.3g", err.value)};
}

Outcome criterion3() {
  Worst prob, time;
  for (int n = 2; n <= 20; ++n)
    for (double x : kXGrid) {
      const Matrix exact = absorption_probabilities_exact(n, x);
      const Vector to_white = conditional_mean_times(n, x, Parity::Even);
      const Vector to_black = conditional_mean_times(n, x, Parity::Odd);
      for (int n1 = 0; n1 <= n; ++n1) {
        const auto p = absorb_prob(n1, n - n1, x);
        const auto e = expected_colored_time(n1, n - n1, x);
        prob.see(std::abs(p.white - exact(n1, 0)));
        prob.see(std::abs(p.black - exact(n1, 1)));
        time.see(std::abs(e.white - to_white(n1)));
        time.see(std::abs(e.black - to_black(n1)));
      }
    }
  return {prob.value <= 1e-10 && time.value <= 1e-10,
          fmt("max prob err %.3g, max time err %.3g", prob.value, time.value)};
}

Outcome criterion4() {
  Worst generator, semigroup;
  for (int n = 2; n <= 20; ++n)
    for (double x : kXGrid) {
      const auto g = build_generator(n, x);
      const auto part = parity_partition(g.space);
      generator.see(check_lumpable(g.rates, part, MatrixKind::Generator).max_violation);
      if (n > 8) continue;
      const auto uv = uv_matrices(part, g.space.size());
      const Matrix lumped = lump(g.rates, part, MatrixKind::Generator);
      for (double t : {0.1, 0.5, 1.0, 2.0})
        semigroup.see(linalg::inf_norm(uv.U * linalg::mat_exp(g.rates, t) * uv.V - linalg::mat_exp(lumped, t)));
    }
  return {generator.value <= 1e-12 && semigroup.value <= 1e-9,
          fmt("||VUQV - QV|| <= %.3g, semigroup residual <= %.3g", generator.value, semigroup.value)};
}

Outcome criterion5() {
  Worst err;
  for (int n = 2; n <= 12; ++n)
    for (double x : kXGrid) {
      const auto g = build_generator(n, x);
      const auto part = parity_partition(g.space);
      const Matrix a = embedded_jump_chain(lump(g.rates, part, MatrixKind::Generator));
      const Matrix b = lump(embedded_jump_chain(g.rates), part, MatrixKind::Stochastic);
      err.see(linalg::inf_norm(a - b));
    }
  return {err.value <= 1e-12, fmt("max diagram residual %.3g", err.value)};
}

Outcome criterion6() {
  Worst sup, at_zero, integral;
  const std::size_t points = 201;  // [0, 10] step 0.05
  for (int n = 2; n <= 15; ++n)
    for (double x : kXGrid)
      for (Parity target : kParities) {
        const Matrix survival = conditional_survival(n, x, target, 0.0, 0.05, points);
        for (Parity start : kParities) {
          const auto c = ccdf_colored_time(n, start, target, x);
          at_zero.see(std::abs(c(0.0) - 1.0));
          const auto e = expected_colored_time_lumped(n, x, InitialParityDistribution::concentrated(start));
          integral.see(std::abs(c.integral() - (target == Parity::Even ? e.even : e.odd)));
          for (int n1 = start == Parity::Even ? 0 : 1; n1 <= n; n1 += 2)
            for (std::size_t i = 0; i < points; ++i)
              sup.see(std::abs(c(0.05 * static_cast<double>(i)) - survival(static_cast<Eigen::Index>(i), n1)));
        }
      }
  const double literal = ccdf_colored_time(3, Parity::Odd, Parity::Even, 0.3, CcdfForm::Uncorrected)(0.0);
  const bool literal_off = std::abs(literal - 0.9227053140096617) <= 1e-9;
  std::string detail = fmt("sup diff %.3g, |CCDF(0)-1| %.3g, integral err %.3g", sup.value, at_zero.value, integral.value);
  detail += fmt("; uncorrected odd-start CCDF(0) at n=3, x=0.3 = %.6f", literal);
  return {sup.value <= 1e-9 && at_zero.value <= 1e-10 && integral.value <= 1e-10 && literal_off, detail};
}

Outcome criterion7() {
  const std::uint64_t reps = 100000;
  const double eps = std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(reps)));
  int checks = 0, failures = 0;
  double worst_z = 0.0, worst_band = 0.0;
  auto within = [&](double observed, double expected, double se) {
    ++checks;
    const double z = se > 0 ? std::abs(observed - expected) / se : (observed == expected ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
    if (!(std::abs(observed - expected) <= 4 * se + 1e-12)) ++failures;
  };
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.05 * i);

  std::uint64_t seed = 20240501;
  for (int n : {2, 5, 10})
    for (double x : {0.2, 0.5, 0.8})
      for (int n1 : {0, 1}) {
        SimConfig cfg;
        cfg.n = n;
        cfg.n1 = n1;
        cfg.x = x;
        cfg.replicates = reps;
        cfg.seed = seed++;
        const auto r = run_experiment(cfg);
        const auto p = absorb_prob(n1, n - n1, x);
        const auto e = expected_colored_time(n1, n - n1, x);
        within(r.freq_white_root, p.white, r.stderr_freq);
        within(r.mean_time_any, 2.0 - 2.0 / n, r.stderr_time_any);
        // Given either root the full process keeps the unconditional law.
        within(r.mean_time_white, 2.0 - 2.0 / n, r.stderr_time_white);
        within(r.mean_time_black, 2.0 - 2.0 / n, r.stderr_time_black);
        const Parity rho0 = n1 % 2 == 0 ? Parity::Even : Parity::Odd;
        for (int k = 0; k < n; ++k) {
          const double q = parity_distribution(k, x, rho0).even;
          within(r.parity_even_after[static_cast<std::size_t>(k)], q,
                 std::sqrt(q * (1 - q) / static_cast<double>(reps)));
        }

        for (Parity target : kParities) {
          cfg.mode = SimMode::Conditional;
          cfg.target = target;
          cfg.ccdf_grid = grid;
          cfg.seed = seed++;
          const auto c = run_experiment(cfg);
          within(c.mean_time_any, target == Parity::Even ? e.white : e.black, c.stderr_time_any);
          const auto exact = ccdf_colored_time(n, rho0, target, x);
          ++checks;
          double band = 0.0;
          for (const auto& pt : c.empirical_ccdf) band = std::max(band, std::abs(pt.value - exact(pt.t)));
          worst_band = std::max(worst_band, band);
          if (band > eps) ++failures;
        }
      }
  std::string detail = std::to_string(checks) + " checks, " + std::to_string(failures) + " outside bands";
  detail += fmt("; worst z %.2f, worst CCDF gap %.4f (DKW eps %.4f)", worst_z, worst_band, eps);
  return {failures == 0, detail};
}

Outcome criterion8() {
  WfConfig cfg;
  cfg.population = 500;
  cfg.initial_colors.assign(5, Color::Black);
  cfg.initial_colors.insert(cfg.initial_colors.end(), 5, Color::White);
  cfg.replicates = 2000;
  cfg.seed = 8;
  const auto s = run_wright_fisher(cfg, 0.5);
  const bool tmrca_ok = std::abs(s.mean_tmrca_coalescent - 1.8) <= 0.18;
  const bool color_ok = std::abs(s.freq_black_root - 0.5) <= 0.04;

  bool bayes_ok = true;
  const std::vector<std::vector<Color>> pairs{{Color::Black, Color::Black}, {Color::Black, Color::White},
                                              {Color::White, Color::Black}, {Color::White, Color::White}};
  for (int i = 1; i <= 9; ++i)
    for (const auto& c : pairs) {
      const auto post = parent_color_posterior(i / 10.0, 1.0 - i / 10.0, c, 0.5);
      if (std::abs(post.black - 0.5) > 1e-12 || std::abs(post.white - 0.5) > 1e-12) bayes_ok = false;
    }
  std::string detail = fmt("mean tmrca/N %.4f (target 1.8 +/- 10%%), black root %.4f (0.5 +/- 0.04)",
                           s.mean_tmrca_coalescent, s.freq_black_root);
  detail += bayes_ok ? "; p = 1 - q posterior is 1/2" : "; p = 1 - q posterior deviates";
  return {tmrca_ok && color_ok && bayes_ok, detail};
}

// Hex-float dump so equality means bit-identical.
std::string dump(const SimReport& r) {
  std::string out;
  auto put = [&](double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%a,", v);
    out += b;
  };
  for (double v : {r.freq_white_root, r.freq_black_root, r.stderr_freq, r.mean_time_any, r.stderr_time_any,
                   r.mean_time_white, r.stderr_time_white, r.mean_time_black, r.stderr_time_black})
    put(v);
  for (const auto& p : r.empirical_ccdf) put(p.value);
  for (double v : r.parity_even_after) put(v);
  return out;
}

std::string dump(const WfSummary& s) {
  std::string out;
  for (double v : {s.mean_tmrca_generations, s.mean_tmrca_coalescent, s.stderr_tmrca_coalescent, s.freq_black_root}) {
    char b[40];
    std::snprintf(b, sizeof b, "%a,", v);
    out += b;
  }
  return out;
}

Outcome criterion9() {
  bool same = true;
  for (SimMode mode : {SimMode::Full, SimMode::Lumped, SimMode::Conditional}) {
    SimConfig cfg;
    cfg.n = 9;
    cfg.n1 = 4;
    cfg.x = 0.35;
    cfg.replicates = 20000;
    cfg.seed = 99;
    cfg.mode = mode;
    cfg.ccdf_grid = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::string> runs;
    for (unsigned threads : {1u, 1u, 3u, 0u}) {
      cfg.threads = threads;
      runs.push_back(dump(run_experiment(cfg)));
    }
    same = same && std::all_of(runs.begin(), runs.end(), [&](const auto& s) { return s == runs.front(); });
  }
  WfConfig wf;
  wf.population = 300;
  wf.initial_colors = {Color::Black, Color::White, Color::White, Color::Black, Color::White};
  wf.replicates = 400;
  wf.seed = 5;
  std::vector<std::string> runs;
  for (unsigned threads : {1u, 1u, 4u, 0u}) {
    wf.threads = threads;
    runs.push_back(dump(run_wright_fisher(wf, 0.3)));
  }
  same = same && std::all_of(runs.begin(), runs.end(), [&](const auto& s) { return s == runs.front(); });
  return {same, same ? "repeated simulate and wf runs bit-identical across thread counts"
                     : "repeated runs differ"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "unconditional expected time", 1, criterion1},
      {2, "colored MRCA at x = 1/2", 1, criterion2},
      {3, "closed forms vs matrix oracle", 10, criterion3},
      {4, "parity lumpability", 30, criterion4},
      {5, "commutative diagram", 5, criterion5},
      {6, "colored-time CCDF", 30, criterion6},
      {7, "Monte Carlo agreement", 60, criterion7},
      {8, "Wright-Fisher limit", 120, criterion8},
      {9, "determinism", 60, criterion9},
  };
  int failed = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < e.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d %-32s %s  %.2fs (limit %.0fs)%s  %s\n", e.id, e.name, pass ? "PASS" : "FAIL", secs,
                e.limit_seconds, in_time ? "" : " TOO SLOW", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed;
}
