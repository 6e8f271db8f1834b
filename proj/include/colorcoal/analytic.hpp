#pragma once

#include <span>
#include <vector>

#include "colorcoal/state_space.hpp"

namespace colorcoal {

struct InitialParityDistribution {
  double even = 1.0;
  double odd = 0.0;

  void validate() const;
  static InitialParityDistribution concentrated(Parity p) {
    return p == Parity::Even ? InitialParityDistribution{1.0, 0.0}
                             : InitialParityDistribution{0.0, 1.0};
  }
};

/// Pair of quantities indexed by the root reached: white (0,1), black (1,0).
struct RootPair {
  double white = 0.0;
  double black = 0.0;
};

/// Pair indexed by block parity (E, O).
struct ParityPair {
  double even = 0.0;
  double odd = 0.0;
};

struct ExpoTerm {
  double coefficient;
  double rate;
};

/// Signed sum of exponentials  sum_j c_j exp(-lambda_j t).
class ExpoMixture {
 public:
  ExpoMixture() = default;
  explicit ExpoMixture(std::vector<ExpoTerm> terms);

  std::span<const ExpoTerm> terms() const noexcept { return terms_; }
  double operator()(double t) const;
  /// Integral over [0, inf): sum_j c_j / lambda_j.
  double integral() const;

 private:
  std::vector<ExpoTerm> terms_;
};

struct ColoredTimeSummary {
  double p_white_root = 0.0;
  double p_black_root = 0.0;
  double e_time_white = 0.0;
  double e_time_black = 0.0;
  double e_time_any = 0.0;
};

/// Expected visits (a_k, b_k) of the parity jump chain to E_k, O_k for
/// k = n, n-1, ..., 2 (element 0 is level n).
std::vector<ParityPair> sojourn_coefficients(int n, double x,
                                             const InitialParityDistribution& pi);

/// Probabilities of absorbing in E_1 and O_1.
ParityPair absorb_prob_lumped(int n, double x, const InitialParityDistribution& pi);

/// Absorption probabilities of the full process from (n1, n2).
RootPair absorb_prob(int n1, int n2, double x);

/// 2 - 2/n.
double expected_time_unconditional(int n);

/// CCDF of the time to the MRCA of n lineages, colors ignored:
/// hypoexponential with rates C(m,2), m = 2..n.
ExpoMixture ccdf_total_time(int n);

/// Expected coalescent times to the white and black roots from (n1, n2).
RootPair expected_colored_time(int n1, int n2, double x);

/// Same for a parity-level initial distribution on level n.
ParityPair expected_colored_time_lumped(int n, double x,
                                        const InitialParityDistribution& pi);

struct KCoefficients {
  double even_to_even;  // K_{n,2}
  double even_to_odd;   // K_{n,2'}
  double odd_to_even;   // K_{n',2}
  double odd_to_odd;    // K_{n',2'}
};

/// Weights of the two level-2 exponentials in the coalescent-time CCDF.
/// Requires n >= 3.
KCoefficients k_coefficients(int n, double x);

enum class CcdfForm {
  Corrected,     ///< normalized form, agrees with the phase-type oracle
  Uncorrected,   ///< odd-start main sum reuses the even-start weights; CCDF(0) != 1
};

/// Pr{T >= t} for the colored coalescent time from a `start`-parity state of
/// level n to the `target` root (Even = (0,1), Odd = (1,0)).
ExpoMixture ccdf_colored_time(int n, Parity start, Parity target, double x,
                              CcdfForm form = CcdfForm::Corrected);

/// Parity distribution after k coalescent events from parity rho0.
ParityPair parity_distribution(int k, double x, Parity rho0);

/// Probability that the parities after 0, 1, ..., n-1 events are exactly
/// `parities` (element 0 is the initial parity, taken as given). The
/// sequence must have length n.
double parity_path_probability(std::span<const Parity> parities, int n, double x);

/// Product of the marginals Pr(rho_k = parities[k] | rho_0) over k. This is
/// not a path probability: it differs from parity_path_probability whenever
/// x != 1/2 and the path has more than one transition.
double parity_marginal_product(std::span<const Parity> parities, int n, double x);

ColoredTimeSummary colored_time_summary(int n1, int n2, double x);

}  // namespace colorcoal
