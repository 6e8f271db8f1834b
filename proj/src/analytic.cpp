#include "colorcoal/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "colorcoal/error.hpp"
#include "colorcoal/generator.hpp"

namespace colorcoal {

namespace {

double decay(double x, int power) { return std::pow(1.0 - 2.0 * x, static_cast<double>(power)); }

void require_sample(int n) { detail::require(n >= 2, "sample size n must be at least 2"); }

InitialParityDistribution start_distribution(int n1, int n2) {
  detail::require(n1 >= 0 && n2 >= 0, "lineage counts must be non-negative");
  require_sample(n1 + n2);
  return InitialParityDistribution::concentrated(parity_of(ColorState{n1, n2}));
}

// Partial-fraction weight of exp(-r_{n-k} t) in the hypoexponential CCDF with
// rates r_n, ..., r_3:  prod_{i != k} r_{n-i} / (r_{n-i} - r_{n-k}).
double level_weight(int n, int k) {
  const double rk = pair_rate(n - k);
  double w = 1.0;
  for (int i = 0; i <= n - 3; ++i) {
    if (i == k) continue;
    const double ri = pair_rate(n - i);
    w *= ri / (ri - rk);
  }
  return w;
}

// sum_k r_{n-k} / (r_{n-k} - lambda) * level_weight(n, k)
double level_sum(int n, double lambda) {
  double s = 0.0;
  for (int k = 0; k <= n - 3; ++k) {
    const double rk = pair_rate(n - k);
    if (!(rk > lambda)) throw std::logic_error("level-2 exit rate collides with a level rate");
    s += rk / (rk - lambda) * level_weight(n, k);
  }
  return s;
}

}  // namespace

void InitialParityDistribution::validate() const {
  detail::require(even >= 0.0 && odd >= 0.0, "initial parity distribution must be non-negative");
  detail::require(std::abs(even + odd - 1.0) <= 1e-12, "initial parity distribution must sum to 1");
}

ExpoMixture::ExpoMixture(std::vector<ExpoTerm> terms) : terms_(std::move(terms)) {
  for (const auto& term : terms_)
    detail::require(term.rate > 0.0, "exponential mixture rates must be positive");
}

double ExpoMixture::operator()(double t) const {
  double v = 0.0;
  for (const auto& term : terms_) v += term.coefficient * std::exp(-term.rate * t);
  return v;
}

double ExpoMixture::integral() const {
  double v = 0.0;
  for (const auto& term : terms_) v += term.coefficient / term.rate;
  return v;
}

std::vector<ParityPair> sojourn_coefficients(int n, double x, const InitialParityDistribution& pi) {
  require_sample(n);
  detail::require_color_parameter(x);
  pi.validate();
  std::vector<ParityPair> out;
  out.reserve(static_cast<std::size_t>(n) - 1);
  for (int k = n; k >= 2; --k) {
    const double d = (pi.even - pi.odd) * decay(x, n - k);
    out.push_back({0.5 + 0.5 * d, 0.5 - 0.5 * d});
  }
  return out;
}

ParityPair absorb_prob_lumped(int n, double x, const InitialParityDistribution& pi) {
  require_sample(n);
  detail::require_color_parameter(x);
  pi.validate();
  const double d = (pi.even - pi.odd) * decay(x, n - 1);
  return {0.5 + 0.5 * d, 0.5 - 0.5 * d};
}

RootPair absorb_prob(int n1, int n2, double x) {
  const auto p = absorb_prob_lumped(n1 + n2, x, start_distribution(n1, n2));
  return {p.even, p.odd};
}

double expected_time_unconditional(int n) {
  require_sample(n);
  return 2.0 - 2.0 / n;
}

ExpoMixture ccdf_total_time(int n) {
  require_sample(n);
  std::vector<ExpoTerm> terms;
  for (int m = n; m >= 2; --m) {
    const double rm = pair_rate(m);
    double w = 1.0;
    for (int i = 2; i <= n; ++i)
      if (i != m) w *= pair_rate(i) / (pair_rate(i) - rm);
    terms.push_back({w, rm});
  }
  return ExpoMixture(std::move(terms));
}

ParityPair expected_colored_time_lumped(int n, double x, const InitialParityDistribution& pi) {
  require_sample(n);
  detail::require_color_parameter(x);
  pi.validate();
  const double upper = 1.0 - 2.0 / n;
  const double scale = 1.0 / (2.0 * (1.0 - x) * x);
  const double d = (pi.even - pi.odd) * decay(x, n - 1);
  return {upper + scale * (1.0 - d), upper + scale * (1.0 + d)};
}

RootPair expected_colored_time(int n1, int n2, double x) {
  const auto e = expected_colored_time_lumped(n1 + n2, x, start_distribution(n1, n2));
  return {e.even, e.odd};
}

KCoefficients k_coefficients(int n, double x) {
  detail::require(n >= 3, "k_coefficients: n must be at least 3");
  detail::require_color_parameter(x);
  const double xbar = 1.0 - x, r2 = pair_rate(2);
  const double d = decay(x, n - 2);
  const double same = 0.5 + 0.5 * d, cross = 0.5 - 0.5 * d;
  const double to_even = level_sum(n, xbar * r2), to_odd = level_sum(n, x * r2);
  return {same * to_even, cross * to_odd, cross * to_even, same * to_odd};
}

ExpoMixture ccdf_colored_time(int n, Parity start, Parity target, double x, CcdfForm form) {
  require_sample(n);
  detail::require_color_parameter(x);
  const double xbar = 1.0 - x, r2 = pair_rate(2);

  // The odd-target laws are the even-target laws with the start flipped.
  const bool even_start = (target == Parity::Even) == (start == Parity::Even);

  if (n == 2) return ExpoMixture({{1.0, (even_start ? xbar : x) * r2}});

  const double d = decay(x, n - 2);
  const double same = 0.5 + 0.5 * d, cross = 0.5 - 0.5 * d;
  // Probability of sitting in E_2 (exit rate xbar*r2) or O_2 (exit rate x*r2).
  const bool literal = form == CcdfForm::Uncorrected;
  const double at_e2 = (even_start || literal) ? same : cross;
  const double at_o2 = (even_start || literal) ? cross : same;

  std::vector<ExpoTerm> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k <= n - 3; ++k) {
    const double rk = pair_rate(n - k);
    const double c = level_weight(n, k) *
                     (xbar * at_e2 / (xbar * r2 - rk) + x * at_o2 / (x * r2 - rk)) * r2;
    terms.push_back({c, rk});
  }
  const auto kc = k_coefficients(n, x);
  terms.push_back({even_start ? kc.even_to_even : kc.odd_to_even, xbar * r2});
  terms.push_back({even_start ? kc.even_to_odd : kc.odd_to_odd, x * r2});
  return ExpoMixture(std::move(terms));
}

ParityPair parity_distribution(int k, double x, Parity rho0) {
  detail::require(k >= 0, "parity_distribution: k must be non-negative");
  detail::require_color_parameter(x);
  const double d = decay(x, k);
  const ParityPair from_even{0.5 + 0.5 * d, 0.5 - 0.5 * d};
  return rho0 == Parity::Even ? from_even : ParityPair{from_even.odd, from_even.even};
}

double parity_path_probability(std::span<const Parity> parities, int n, double x) {
  detail::require(n >= 1, "parity_path_probability: n must be at least 1");
  detail::require(parities.size() == static_cast<std::size_t>(n),
                  "parity_path_probability: sequence length must equal n");
  detail::require_color_parameter(x);
  double p = 1.0;
  for (std::size_t i = 1; i < parities.size(); ++i)
    p *= parities[i] == parities[i - 1] ? 1.0 - x : x;
  return p;
}

double parity_marginal_product(std::span<const Parity> parities, int n, double x) {
  detail::require(n >= 1, "parity_marginal_product: n must be at least 1");
  detail::require(parities.size() == static_cast<std::size_t>(n),
                  "parity_marginal_product: sequence length must equal n");
  double p = 1.0;
  for (std::size_t k = 0; k < parities.size(); ++k) {
    const auto dist = parity_distribution(static_cast<int>(k), x, parities[0]);
    p *= parities[k] == Parity::Even ? dist.even : dist.odd;
  }
  return p;
}

ColoredTimeSummary colored_time_summary(int n1, int n2, double x) {
  const auto p = absorb_prob(n1, n2, x);
  const auto e = expected_colored_time(n1, n2, x);
  return {p.white, p.black, e.white, e.black, expected_time_unconditional(n1 + n2)};
}

}  // namespace colorcoal
