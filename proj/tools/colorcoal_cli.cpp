// colorcoal-cli: closed forms, oracles and simulations of the colored
// coalescent from the command line. Talks to the library only through the
// C API.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "colorcoal/colorcoal.h"
#include "output.hpp"

namespace {

using cli::Cell;
using cli::Document;
using cli::Table;

// Library failure; exit status 1.
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cc_status s) {
  if (s != CC_OK) throw ComputationError(std::string(cc_status_string(s)) + ": " + cc_last_error());
}

struct Grid {
  double start = 0.0, stop = 0.0, step = 1.0;
  std::size_t count() const { return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1; }
  double at(std::size_t i) const { return start + step * static_cast<double>(i); }
};

double parse_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
  return v;
}

long parse_int(const std::string& s) {
  std::size_t used = 0;
  const long v = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw CLI::ValidationError("--t-grid", "expected start:stop:step, got '" + text + "'");
  Grid g;
  try {
    g = {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--t-grid", "malformed number in '" + text + "'");
  }
  if (!(g.step > 0.0) || g.start < 0.0 || g.stop < g.start)
    throw CLI::ValidationError("--t-grid", "need 0 <= start <= stop and step > 0");
  if (g.count() > 1000000) throw CLI::ValidationError("--t-grid", "grid has too many points");
  return g;
}

std::pair<int, int> parse_pair(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ',');
  try {
    if (parts.size() == 2) {
      const long a = parse_int(parts[0]), b = parse_int(parts[1]);
      if (a >= 0 && b >= 0 && a + b <= 100000) return {static_cast<int>(a), static_cast<int>(b)};
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(flag, "expected two non-negative integers 'black,white', got '" + text + "'");
}

const CLI::Validator kOpenUnit(
    [](const std::string& s) -> std::string {
      try {
        const double v = parse_real(s);
        if (v > 0.0 && v < 1.0) return {};
      } catch (const std::exception&) {
      }
      return "value must lie strictly between 0 and 1, got " + s;
    },
    "X in (0,1)", "open_unit");

const std::map<std::string, cc_parity> kParityNames{{"even", CC_EVEN}, {"odd", CC_ODD}};
const std::map<std::string, cc_sim_mode> kModeNames{
    {"full", CC_SIM_FULL}, {"lumped", CC_SIM_LUMPED}, {"conditional", CC_SIM_CONDITIONAL}};
const std::map<std::string, cli::Format> kFormatNames{
    {"table", cli::Format::Table}, {"csv", cli::Format::Csv}, {"json", cli::Format::Json}};

const char* parity_name(cc_parity p) { return p == CC_EVEN ? "even" : "odd"; }

Cell integer(long long v) { return static_cast<std::int64_t>(v); }

// ---- exact ---------------------------------------------------------------

struct ExactOpts {
  int n = 0;
  double x = 0.5;
  std::string start;
};

std::pair<int, int> resolve_start(int n, const std::string& start, const char* flag) {
  if (start.empty()) return {0, n};
  const auto p = parse_pair(start, flag);
  if (p.first + p.second != n) throw CLI::ValidationError(flag, "black + white must equal --n");
  return p;
}

const std::vector<std::string> kExactColumns{"n", "n1", "n2", "x", "p_white_root", "p_black_root",
                                             "e_time_white", "e_time_black", "e_time_any",
                                             "prob_residual", "time_residual"};

std::vector<Cell> exact_row(int n1, int n2, double x) {
  cc_exact_result r{};
  check(cc_exact(n1, n2, x, &r));
  const double prob = std::max(std::abs(r.p_white_root - r.oracle_p_white_root),
                               std::abs(r.p_black_root - r.oracle_p_black_root));
  const double time = std::max({std::abs(r.e_time_white - r.oracle_e_time_white),
                                std::abs(r.e_time_black - r.oracle_e_time_black),
                                std::abs(r.e_time_any - r.oracle_e_time_any)});
  return {integer(n1 + n2), integer(n1), integer(n2), x, r.p_white_root, r.p_black_root,
          r.e_time_white, r.e_time_black, r.e_time_any, prob, time};
}

Document run_exact(const ExactOpts& o) {
  const auto [n1, n2] = resolve_start(o.n, o.start, "--start");
  Document doc{"exact", {{"n", integer(o.n)}, {"n1", integer(n1)}, {"n2", integer(n2)}, {"x", o.x}}, {kExactColumns, {}}, {}};
  doc.rows.add(exact_row(n1, n2, o.x));
  return doc;
}

// ---- ccdf ----------------------------------------------------------------

struct CcdfOpts {
  int n = 0;
  double x = 0.5;
  cc_parity start = CC_EVEN;
  cc_parity target = CC_EVEN;
  std::string grid = "0:10:0.5";
  bool uncorrected = false;
};

Document run_ccdf(const CcdfOpts& o) {
  const Grid g = parse_grid(o.grid);
  const std::size_t count = g.count();
  cc_ccdf* raw = nullptr;
  check(cc_ccdf_create(o.n, o.start, o.target, o.x, o.uncorrected ? CC_CCDF_UNCORRECTED : CC_CCDF_CORRECTED, &raw));
  const std::unique_ptr<cc_ccdf, decltype(&cc_ccdf_destroy)> ccdf(raw, cc_ccdf_destroy);
  std::vector<double> oracle(count);
  check(cc_ccdf_oracle(o.n, o.start, o.target, o.x, g.start, g.step, count, oracle.data()));

  Document doc{"ccdf",
               {{"n", integer(o.n)},
                {"x", o.x},
                {"start_parity", parity_name(o.start)},
                {"target_parity", parity_name(o.target)},
                {"form", o.uncorrected ? "uncorrected" : "corrected"},
                {"expected_time", cc_ccdf_integral(ccdf.get())}},
               {{"t", "ccdf_closed_form", "ccdf_matrix_oracle", "abs_diff"}, {}},
               {}};
  for (std::size_t i = 0; i < count; ++i) {
    const double t = g.at(i), v = cc_ccdf_eval(ccdf.get(), t);
    doc.rows.add({t, v, oracle[i], std::abs(v - oracle[i])});
  }
  Table terms{{"rate", "coefficient"}, {}};
  for (std::size_t i = 0; i < cc_ccdf_term_count(ccdf.get()); ++i) {
    double c = 0, r = 0;
    check(cc_ccdf_term(ccdf.get(), i, &c, &r));
    terms.add({r, c});
  }
  doc.extra.emplace_back("terms", std::move(terms));
  return doc;
}

// ---- simulate ------------------------------------------------------------

struct SimOpts {
  int n = 0;
  std::string start;
  double x = 0.5;
  long long reps = 10000;
  std::uint64_t seed = 0;
  cc_sim_mode mode = CC_SIM_FULL;
  cc_parity target = CC_EVEN;
  std::string grid;
  unsigned threads = 0;
  std::string rows = "summary";
};

Document run_simulate(const SimOpts& o) {
  const auto [n1, n2] = resolve_start(o.n, o.start, "--start");
  std::vector<double> grid;
  if (!o.grid.empty()) {
    const Grid g = parse_grid(o.grid);
    for (std::size_t i = 0; i < g.count(); ++i) grid.push_back(g.at(i));
  }
  const cc_sim_config cfg{o.n, n1, o.x, static_cast<std::uint64_t>(o.reps), o.seed, o.mode, o.target,
                          grid.data(), grid.size(), o.threads};
  cc_sim_report* raw = nullptr;
  check(cc_simulate(&cfg, &raw));
  const std::unique_ptr<cc_sim_report, decltype(&cc_sim_report_destroy)> report(raw, cc_sim_report_destroy);
  cc_sim_summary s{};
  check(cc_sim_report_summary(report.get(), &s));

  cc_exact_result exact{};
  check(cc_exact(n1, n2, o.x, &exact));
  const bool conditional = o.mode == CC_SIM_CONDITIONAL;
  // Reference law of the simulated time: the conditional process for
  // conditional mode, otherwise the color-blind coalescence time.
  const double ref_p_white = conditional ? (o.target == CC_EVEN ? 1.0 : 0.0) : exact.p_white_root;
  const double ref_time = !conditional ? exact.e_time_any
                          : o.target == CC_EVEN ? exact.e_time_white
                                                : exact.e_time_black;

  std::string mode_name;
  for (const auto& [k, v] : kModeNames)
    if (v == o.mode) mode_name = k;
  Document doc{"simulate",
               {{"n", integer(o.n)},
                {"n1", integer(n1)},
                {"n2", integer(n2)},
                {"x", o.x},
                {"replicates", integer(o.reps)},
                {"seed", std::to_string(o.seed)},
                {"mode", mode_name},
                {"target_parity", conditional ? parity_name(o.target) : "none"}},
               {},
               {}};

  Table summary{{"replicates", "freq_white_root", "freq_black_root", "stderr_freq", "mean_time_any",
                 "stderr_time_any", "mean_time_white", "stderr_time_white", "mean_time_black",
                 "stderr_time_black", "exact_p_white_root", "exact_mean_time"},
                {}};
  summary.add({integer(static_cast<long long>(s.replicates)), s.freq_white_root, s.freq_black_root,
               s.stderr_freq, s.mean_time_any, s.stderr_time_any, s.mean_time_white, s.stderr_time_white,
               s.mean_time_black, s.stderr_time_black, ref_p_white, ref_time});

  Table ccdf{{"t", "empirical_ccdf", "closed_form_ccdf", "abs_diff"}, {}};
  if (!grid.empty()) {
    cc_ccdf* raw_ref = nullptr;
    if (conditional)
      check(cc_ccdf_create(o.n, n1 % 2 == 0 ? CC_EVEN : CC_ODD, o.target, o.x, CC_CCDF_CORRECTED, &raw_ref));
    else
      check(cc_ccdf_create_total(o.n, &raw_ref));
    const std::unique_ptr<cc_ccdf, decltype(&cc_ccdf_destroy)> ref(raw_ref, cc_ccdf_destroy);
    for (std::size_t i = 0; i < cc_sim_report_ccdf_size(report.get()); ++i) {
      double t = 0, v = 0;
      check(cc_sim_report_ccdf_point(report.get(), i, &t, &v));
      const double expected = cc_ccdf_eval(ref.get(), t);
      ccdf.add({t, v, expected, std::abs(v - expected)});
    }
  }

  Table parity{{"k", "empirical_even", "closed_form_even"}, {}};
  for (std::size_t k = 0; k < cc_sim_report_parity_size(report.get()); ++k) {
    double f = 0, even = 0, odd = 0;
    check(cc_sim_report_parity_even(report.get(), k, &f));
    check(cc_parity_distribution(static_cast<int>(k), o.x, n1 % 2 == 0 ? CC_EVEN : CC_ODD, &even, &odd));
    parity.add({integer(static_cast<long long>(k)), f, even});
  }

  if (o.rows == "ccdf") {
    doc.rows = std::move(ccdf);
    doc.extra.emplace_back("summary", std::move(summary));
    doc.extra.emplace_back("parity_even_after", std::move(parity));
  } else if (o.rows == "parity") {
    doc.rows = std::move(parity);
    doc.extra.emplace_back("summary", std::move(summary));
    if (!grid.empty()) doc.extra.emplace_back("ccdf", std::move(ccdf));
  } else {
    doc.rows = std::move(summary);
    if (!grid.empty()) doc.extra.emplace_back("ccdf", std::move(ccdf));
    doc.extra.emplace_back("parity_even_after", std::move(parity));
  }
  return doc;
}

// ---- lump-check ----------------------------------------------------------

struct LumpOpts {
  int n = 0;
  double x = 0.5;
  std::vector<double> times{0.5, 1.0, 2.0};
};

Document run_lump_check(const LumpOpts& o) {
  std::vector<double> residuals(o.times.size());
  cc_lump_result r{};
  check(cc_lump_check(o.n, o.x, o.times.data(), o.times.size(), &r, residuals.data()));
  Document doc{"lump-check",
               {{"n", integer(o.n)}, {"x", o.x}},
               {{"t", "semigroup_residual", "generator_residual", "diagram_residual", "fundamental_residual"}, {}},
               {}};
  for (std::size_t i = 0; i < o.times.size(); ++i)
    doc.rows.add({o.times[i], residuals[i], r.generator_residual, r.diagram_residual, r.fundamental_residual});
  return doc;
}

// ---- wf ------------------------------------------------------------------

struct WfOpts {
  int pop = 0;
  int n = 0;
  double x = 0.5;
  long long reps = 1000;
  std::uint64_t seed = 0;
  std::string start;
  unsigned threads = 0;
};

Document run_wf(const WfOpts& o) {
  if (o.n > o.pop) throw CLI::ValidationError("--n", "sample size must not exceed --pop");
  // Default sample: half black (rounded down), rest white.
  const auto [nb, nw] = o.start.empty() ? std::pair<int, int>{o.n / 2, o.n - o.n / 2} : resolve_start(o.n, o.start, "--start");
  const cc_wf_config cfg{o.pop, nb, nw, static_cast<std::uint64_t>(o.reps), o.seed, o.threads};
  cc_wf_summary s{};
  check(cc_wright_fisher(&cfg, o.x, &s));
  Document doc{"wf",
               {{"pop", integer(o.pop)},
                {"n", integer(o.n)},
                {"n_black", integer(nb)},
                {"n_white", integer(nw)},
                {"x", o.x},
                {"replicates", integer(o.reps)},
                {"seed", std::to_string(o.seed)}},
               {{"replicates", "mean_tmrca_generations", "mean_tmrca_coalescent", "stderr_tmrca_coalescent",
                 "freq_black_root", "freq_white_root", "stderr_freq", "limit_tmrca", "limit_p_black_root"},
                {}},
               {}};
  doc.rows.add({integer(static_cast<long long>(s.replicates)), s.mean_tmrca_generations, s.mean_tmrca_coalescent,
                s.stderr_tmrca_coalescent, s.freq_black_root, s.freq_white_root, s.stderr_freq, s.limit_tmrca,
                s.limit_p_black_root});
  return doc;
}

// ---- sweep ---------------------------------------------------------------

struct SweepOpts {
  std::string range;
  std::vector<double> xs{0.5};
  cc_parity start = CC_EVEN;
};

Document run_sweep(const SweepOpts& o) {
  const auto parts = split(o.range, ':');
  long lo = 0, hi = 0;
  try {
    if (parts.size() != 2) throw std::invalid_argument(o.range);
    lo = parse_int(parts[0]);
    hi = parse_int(parts[1]);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--n-range", "expected lo:hi, got '" + o.range + "'");
  }
  if (lo < 2 || hi < lo || hi > 2000) throw CLI::ValidationError("--n-range", "need 2 <= lo <= hi <= 2000");

  std::string xs;
  for (double x : o.xs) xs += (xs.empty() ? "" : ",") + cli::format_real(x);
  Document doc{"sweep",
               {{"n_range", o.range}, {"x", xs}, {"start_parity", parity_name(o.start)}},
               {kExactColumns, {}},
               {}};
  const int n1 = o.start == CC_EVEN ? 0 : 1;
  for (double x : o.xs)
    for (long n = lo; n <= hi; ++n) doc.rows.add(exact_row(n1, static_cast<int>(n) - n1, x));
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colored coalescent: closed forms, matrix oracles and simulation"};
  app.set_version_flag("--version", std::string(cc_version()));
  app.require_subcommand(1);

  std::string format_name = "table";
  std::string out_path;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")->transform(CLI::IsMember(kFormatNames));
    sub->add_option("--out", out_path, "Write results to FILE instead of stdout");
  };

  ExactOpts exact;
  auto* c_exact = app.add_subcommand("exact", "Absorption probabilities and expected colored times");
  c_exact->add_option("--n", exact.n, "Sample size")->required()->check(CLI::Range(2, 100000));
  c_exact->add_option("--x", exact.x, "Color parameter in (0,1)")->required()->check(kOpenUnit);
  c_exact->add_option("--start", exact.start, "Initial state BLACK,WHITE (default 0,n)");
  common(c_exact);

  CcdfOpts ccdf;
  auto* c_ccdf = app.add_subcommand("ccdf", "CCDF of the time to a colored MRCA");
  c_ccdf->add_option("--n", ccdf.n, "Sample size")->required()->check(CLI::Range(2, 100000));
  c_ccdf->add_option("--x", ccdf.x, "Color parameter in (0,1)")->required()->check(kOpenUnit);
  c_ccdf->add_option("--start-parity", ccdf.start, "Parity of the initial black count")
      ->transform(CLI::CheckedTransformer(kParityNames, CLI::ignore_case));
  c_ccdf->add_option("--target-parity", ccdf.target, "even = white root, odd = black root")
      ->transform(CLI::CheckedTransformer(kParityNames, CLI::ignore_case));
  c_ccdf->add_option("--t-grid", ccdf.grid, "Time grid start:stop:step")->capture_default_str();
  c_ccdf->add_flag("--uncorrected", ccdf.uncorrected, "Use the uncorrected odd-start coefficients");
  common(c_ccdf);

  SimOpts sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo simulation of the colored process");
  c_sim->add_option("--n", sim.n, "Sample size")->required()->check(CLI::Range(2, 100000));
  c_sim->add_option("--start", sim.start, "Initial state BLACK,WHITE (default 0,n)");
  c_sim->add_option("--x", sim.x, "Color parameter in (0,1)")->required()->check(kOpenUnit);
  c_sim->add_option("--reps", sim.reps, "Replicates")->check(CLI::Range(1LL, 1000000000LL));
  c_sim->add_option("--seed", sim.seed, "Master seed")->required();
  c_sim->add_option("--mode", sim.mode, "full, lumped or conditional")
      ->transform(CLI::CheckedTransformer(kModeNames, CLI::ignore_case));
  c_sim->add_option("--target-parity", sim.target, "Target root for conditional mode")
      ->transform(CLI::CheckedTransformer(kParityNames, CLI::ignore_case));
  c_sim->add_option("--t-grid", sim.grid, "Grid start:stop:step for the empirical CCDF");
  c_sim->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  c_sim->add_option("--rows", sim.rows, "Table written as rows")
      ->check(CLI::IsMember({"summary", "ccdf", "parity"}));
  common(c_sim);

  LumpOpts lumpo;
  auto* c_lump = app.add_subcommand("lump-check", "Numerical checks of the parity lumping");
  c_lump->add_option("--n", lumpo.n, "Sample size")->required()->check(CLI::Range(2, 200));
  c_lump->add_option("--x", lumpo.x, "Color parameter in (0,1)")->required()->check(kOpenUnit);
  c_lump->add_option("--t", lumpo.times, "Comma-separated times")->delimiter(',')->check(CLI::NonNegativeNumber);
  common(c_lump);

  WfOpts wf;
  auto* c_wf = app.add_subcommand("wf", "Wright-Fisher ancestral recovery");
  c_wf->add_option("--pop", wf.pop, "Population size N")->required()->check(CLI::Range(2, 1000000000));
  c_wf->add_option("--n", wf.n, "Sample size")->required()->check(CLI::Range(2, 100000));
  c_wf->add_option("--x", wf.x, "Color parameter in (0,1)")->required()->check(kOpenUnit);
  c_wf->add_option("--reps", wf.reps, "Replicates")->check(CLI::Range(1LL, 1000000000LL));
  c_wf->add_option("--seed", wf.seed, "Master seed")->required();
  c_wf->add_option("--start", wf.start, "Sample colors BLACK,WHITE (default half black)");
  c_wf->add_option("--threads", wf.threads, "Worker threads (0 = all cores)");
  common(c_wf);

  SweepOpts sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Closed forms and oracle residuals over a grid of (n, x)");
  c_sweep->add_option("--n-range", sweep.range, "Inclusive range lo:hi")->required();
  c_sweep->add_option("--x", sweep.xs, "Comma-separated color parameters")->delimiter(',')->check(kOpenUnit);
  c_sweep->add_option("--start-parity", sweep.start, "Parity of the initial black count")
      ->transform(CLI::CheckedTransformer(kParityNames, CLI::ignore_case));
  common(c_sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Document doc;
    if (c_exact->parsed()) doc = run_exact(exact);
    else if (c_ccdf->parsed()) doc = run_ccdf(ccdf);
    else if (c_sim->parsed()) doc = run_simulate(sim);
    else if (c_lump->parsed()) doc = run_lump_check(lumpo);
    else if (c_wf->parsed()) doc = run_wf(wf);
    else doc = run_sweep(sweep);

    const cli::Format format = kFormatNames.at(format_name);
    if (out_path.empty()) {
      cli::write(std::cout, doc, format);
      std::cout.flush();
      if (!std::cout) throw ComputationError("failed writing to stdout");
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw ComputationError("cannot open " + out_path);
      cli::write(out, doc, format);
      if (!out.flush()) throw ComputationError("failed writing " + out_path);
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
