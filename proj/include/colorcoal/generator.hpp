#pragma once

#include <array>
#include <vector>

#include "colorcoal/linalg.hpp"
#include "colorcoal/state_space.hpp"

namespace colorcoal {

/// Binomial coefficient C(n, m) as a double, with C(n, m) = 0 when n < m.
double choose(long n, long m) noexcept;

/// Coalescence rate r_m = C(m, 2) at level m.
inline double pair_rate(int m) noexcept { return choose(m, 2); }

/// The four possible targets of one coalescent event from (k,l), with rates.
/// Entries with zero rate are still listed (the target may lie off-lattice).
struct Transition {
  ColorState target;
  double rate;
};
std::array<Transition, 4> outgoing_transitions(ColorState from, double x);

/// Colored coalescent generator Q on the lattice of sample size n.
struct Generator {
  StateSpace space;
  double x;
  Matrix rates;
};

Generator build_generator(int n, double x);

/// Embedded jump chain of an arbitrary (sub-)generator: off-diagonal rates
/// divided by the exit rate; rows with zero exit rate become self-loops.
Matrix embedded_jump_chain(const Matrix& q);

struct JumpChain {
  StateSpace space;
  Matrix transitions;
};

JumpChain jump_chain(const Generator& g);

/// One-step jump probabilities from level j to level j-1, indexed by the
/// black count on each side: a (j+1) x j matrix.
Matrix level_step(int j, double x);

/// Jump-chain transition probabilities from level n to level m-1, that is
/// after n-m+1 coalescent events: an (n+1) x m matrix built as a product of
/// level_step blocks. m = n+1 yields the identity (zero events).
Matrix c_matrix(int n, int m, double x);

/// Distribution over level n-k (indexed by black count) after k events,
/// starting from (n1, n2).
Vector k_step_distribution(int n1, int n2, int k, double x);

/// Row i: (Pr absorb at (0,1), Pr absorb at (1,0)) from the i-th state of
/// level n.
Matrix absorption_probabilities_exact(int n, double x);

/// N = (I - J_tt)^{-1} over the transient states (every level >= 2), in
/// canonical order.
Matrix fundamental_matrix(const JumpChain& jc);

/// Expected time to absorption from each transient state, computed from the
/// fundamental matrix as the visit-weighted sum of mean holding times.
Vector expected_absorption_times(const JumpChain& jc);

/// Generator of the colored process in which jumps into the non-target
/// absorbing state are deleted, so every path is absorbed at the target
/// root ((0,1) for Even, (1,0) for Odd). Its absorption time is the colored
/// coalescent time.
Matrix conditional_generator(int n, double x, Parity target);

/// Phase-type mean absorption times for a generator whose first
/// `transient` states are transient: solves (-S) m = 1.
Vector phase_type_means(const Matrix& q, std::size_t transient);

/// Pr{T >= t} for absorption into column `target` of the generator q, for
/// t = start + i*step, i = 0..count-1. Row i of the result holds the values
/// for every starting state.
Matrix survival_on_grid(const Matrix& q, std::size_t target, double start, double step,
                        std::size_t count);

/// Mean colored coalescent time from each state of level n (canonical
/// order), by the phase-type formula on conditional_generator.
Vector conditional_mean_times(int n, double x, Parity target);

/// Survival Pr{T >= t} of the conditional process on the grid
/// t = start + i*step; row i, column j is the value from the j-th state of
/// level n.
Matrix conditional_survival(int n, double x, Parity target, double start, double step,
                            std::size_t count);

}  // namespace colorcoal
